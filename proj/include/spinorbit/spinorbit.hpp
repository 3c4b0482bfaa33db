#pragma once

// Exact symbolic workbench for first-order integrability of planar and
// spatial Schrodinger-Pauli operators with spin-orbit interaction.

#include "spinorbit/scalar.hpp"
#include "spinorbit/symbol.hpp"
#include "spinorbit/polynomial.hpp"
#include "spinorbit/context.hpp"
#include "spinorbit/expression.hpp"
#include "spinorbit/parser.hpp"
#include "spinorbit/diffop.hpp"
#include "spinorbit/pauli.hpp"
#include "spinorbit/catalog.hpp"
#include "spinorbit/linsolve.hpp"
#include "spinorbit/liealg.hpp"
#include "spinorbit/determining.hpp"
#include "spinorbit/reference_systems.hpp"
#include "spinorbit/probe.hpp"
#include "spinorbit/report.hpp"
