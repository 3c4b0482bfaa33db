// Command-line surface: reproducible verification runs with text or JSON
// reports. Exit codes: 0 all checks pass, 1 verification failure, 2 usage or
// parse error.

#include <CLI11.hpp>

#include <chrono>
#include <iostream>

#include "spinorbit/spinorbit.hpp"

namespace {

using namespace spinorbit;
using Clock = std::chrono::steady_clock;

struct GlobalOpts {
    std::string format = "text";
    uint64_t seed = 20240001;
    bool quiet = false;
};

// Collects checks, streams them in text mode as they complete, and emits the
// final report. Check names carry an ordinal prefix so name order equals the
// deterministic execution order.
class Runner {
  public:
    Runner(std::string command, std::string system, const GlobalOpts &g)
        : g_(g), start_(Clock::now()) {
        report_.command = std::move(command);
        report_.system = std::move(system);
    }

    void add(const std::string &label, bool pass, const std::string &detail = "") {
        char prefix[16];
        std::snprintf(prefix, sizeof(prefix), "%02d ", ++index_);
        Check c{prefix + label, pass, detail};
        if (g_.format == "text" && !g_.quiet)
            std::cout << check_to_text(c) << "\n" << std::flush;
        report_.checks.push_back(std::move(c));
    }

    void note(const std::string &text) {
        if (g_.format == "text" && !g_.quiet)
            std::cout << text << "\n";
    }

    void attach(const std::string &key, nlohmann::json payload) { extra_[key] = std::move(payload); }

    int finish() {
        report_.elapsed_ms =
            std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start_).count();
        if (g_.format == "json") {
            nlohmann::json j = report_to_json(report_);
            for (auto &[k, v] : extra_.items())
                j[k] = v;
            std::cout << j.dump(2) << "\n";
        } else {
            size_t failed = 0;
            for (const auto &c : report_.checks)
                if (!c.pass)
                    ++failed;
            std::cout << report_.command << "/" << report_.system << ": "
                      << (report_.checks.size() - failed) << "/" << report_.checks.size()
                      << " checks passed (" << report_.elapsed_ms << " ms)\n";
        }
        return report_.all_pass() ? 0 : 1;
    }

  private:
    GlobalOpts g_;
    Report report_;
    nlohmann::json extra_ = nlohmann::json::object();
    Clock::time_point start_;
    int index_ = 0;
};

int cmd_verify(const GlobalOpts &g, const std::string &system_id, const std::string &gamma,
               bool hbar, int n_probe, const std::string &v0_extra) {
    const auto &ids = system_ids();
    if (std::find(ids.begin(), ids.end(), system_id) == ids.end()) {
        std::cerr << "unknown system: " << system_id << "\n";
        return 2;
    }
    BuildOptions opts;
    opts.verified = false;
    opts.hbar = hbar ? HbarMode::tracked : HbarMode::unit;
    opts.gamma_text = gamma;
    opts.v0_extra_text = v0_extra;
    SystemSpec s = build_system(system_id, opts);

    Runner run("verify", system_id, g);
    run.add("hamiltonian is hermitian", is_hermitian(s.hamiltonian));
    for (const auto &[name, x] : s.integrals) {
        PauliOperator k = commutator(s.hamiltonian, x);
        run.add("[H, " + name + "] = 0", k.is_zero(),
                k.is_zero() ? "" : first_nonzero_coefficient(k));
    }
    if (s.ctx->mode == Mode::planar) {
        PauliOperator s3 = PauliOperator::sigma(s.ctx, 3);
        run.add("[H, sigma3] = 0", commutator(s.hamiltonian, s3).is_zero());
        for (const auto &[name, x] : s.integrals) {
            PauliOperator k = commutator(s.hamiltonian, s3 * x);
            run.add("[H, sigma3*" + name + "] = 0", k.is_zero(),
                    k.is_zero() ? "" : first_nonzero_coefficient(k));
        }
    }
    if (n_probe > 0) {
        Rng rng(g.seed);
        run.add("numeric probe seed", true, std::to_string(g.seed));
        SystemSpec concrete = instantiate_random(s, rng);
        for (const auto &[name, x] : concrete.integrals) {
            ProbeResult pr = numeric_probe(concrete, x, n_probe, 20, rng);
            run.add("numeric probe " + name, pr.ok,
                    pr.ok ? std::to_string(pr.evaluations) + " point evaluations" : pr.failure);
        }
    }
    return run.finish();
}

nlohmann::json equations_json(const DeterminingSystem &sys) {
    auto encode = [](const std::vector<DetEquation> &eqs) {
        nlohmann::json out = nlohmann::json::array();
        for (const auto &e : eqs)
            out.push_back({{"sigma", e.sigma},
                           {"beta", deriv_index_to_string(e.beta)},
                           {"flavor", e.flavor},
                           {"equation", to_string(e.lhs)},
                           {"cleared_multiplier", to_string(e.multiplier)}});
        return out;
    };
    nlohmann::json j = {{"space", sys.mode == Mode::planar ? "2d" : "3d"},
                        {"stage", stage_name(sys.stage)},
                        {"count", sys.equations.size()},
                        {"equations", encode(sys.equations)}};
    if (!sys.consequence_block.empty())
        j["consequence_block"] = encode(sys.consequence_block);
    return j;
}

int cmd_determining(const GlobalOpts &g, const std::string &space, const std::string &stage_text,
                    bool match) {
    Mode mode;
    if (space == "2d")
        mode = Mode::planar;
    else if (space == "3d")
        mode = Mode::spatial;
    else {
        std::cerr << "--space must be 2d or 3d\n";
        return 2;
    }
    std::vector<Stage> stages;
    if (stage_text.empty())
        stages = {Stage::second, Stage::first, Stage::zeroth};
    else if (stage_text == "second")
        stages = {Stage::second};
    else if (stage_text == "first")
        stages = {Stage::first};
    else if (stage_text == "zeroth")
        stages = {Stage::zeroth};
    else {
        std::cerr << "--stage must be second, first or zeroth\n";
        return 2;
    }

    auto expected_count = [&](Stage st) {
        if (mode == Mode::planar)
            return st == Stage::second ? 6u : st == Stage::first ? 4u : 2u;
        return st == Stage::second ? 18u : st == Stage::first ? 12u : 8u;
    };

    Runner run("determining", space, g);
    nlohmann::json systems = nlohmann::json::array();
    for (Stage st : stages) {
        DeterminingSystem sys = generate(mode, st);
        run.note("");
        run.note(std::string("-- ") + space + " / " + stage_name(st) + " stage --");
        for (const auto &e : sys.equations)
            run.note("  [" + e.origin() + "]  " + to_string(e.lhs) + " = 0");
        if (!sys.consequence_block.empty())
            run.note("  (" + std::to_string(sys.consequence_block.size()) +
                     " vector-coefficient consequence parts recorded separately)");
        run.add(std::string(stage_name(st)) + " stage count = " +
                    std::to_string(expected_count(st)),
                sys.equations.size() == expected_count(st),
                "generated " + std::to_string(sys.equations.size()));
        if (match) {
            if (has_reference_block(mode, st)) {
                MatchReport m = match_reference(sys, reference_block(mode, st));
                std::string detail = m.bijection ? "bijection found"
                                     : m.span_equal
                                         ? "span equality (see notes)"
                                         : std::to_string(m.unmatched_generated.size()) +
                                               " generated / " +
                                               std::to_string(m.unmatched_reference.size()) +
                                               " reference equations unmatched";
                for (const auto &n : m.notes)
                    detail += "; " + n;
                run.add(std::string(stage_name(st)) + " stage matches the transcribed block",
                        m.ok(), detail);
            } else {
                run.add(std::string(stage_name(st)) + " stage has no transcribed reference",
                        true, "informational");
            }
        }
        systems.push_back(equations_json(sys));
    }
    run.attach("determining_systems", systems);
    return run.finish();
}

nlohmann::json table_json(const StructureTable &t) {
    nlohmann::json brackets = nlohmann::json::object();
    for (size_t i = 0; i < t.names.size(); ++i)
        for (size_t j = 0; j < t.names.size(); ++j) {
            if (i == j)
                continue;
            std::string key = "[" + t.names[i] + ", " + t.names[j] + "]";
            if (!t.entry[i][j]) {
                brackets[key] = "not in span";
                continue;
            }
            nlohmann::json m = nlohmann::json::object();
            for (const auto &[k, c] : *t.entry[i][j])
                m[k] = to_string(c);
            brackets[key] = m;
        }
    return {{"generators", t.names}, {"brackets", brackets}};
}

void print_table(Runner &run, const StructureTable &t) {
    for (size_t i = 0; i < t.names.size(); ++i)
        for (size_t j = i + 1; j < t.names.size(); ++j) {
            std::string line = "  [" + t.names[i] + ", " + t.names[j] + "] = ";
            if (!t.entry[i][j]) {
                run.note(line + "<not in span>");
                continue;
            }
            if (t.entry[i][j]->empty()) {
                run.note(line + "0");
                continue;
            }
            std::string rhs;
            for (const auto &[k, c] : *t.entry[i][j]) {
                if (!rhs.empty())
                    rhs += " + ";
                rhs += "(" + to_string(c) + ")*" + k;
            }
            run.note(line + rhs);
        }
}

int cmd_algebra(const GlobalOpts &g, const std::string &system, bool casimir, bool relations) {
    if (system != "2d" && system != "3d") {
        std::cerr << "--system must be 2d or 3d\n";
        return 2;
    }
    if (casimir && system == "3d") {
        std::cerr << "--casimir applies to the 2d system\n";
        return 2;
    }
    Runner run("algebra", system, g);
    if (system == "2d") {
        SystemSpec s = build_superintegrable_2d();
        GeneratorSet gens = generators_of(s);
        StructureTable t = commutation_table(gens);
        run.note("-- commutation table --");
        print_table(run, t);
        run.add("commutation table closes in span", t.closed(),
                t.closed() ? "" : t.closure_failures.front());
        std::string jf;
        bool jac = jacobi_holds(t, &jf);
        run.add("jacobi identity holds", jac, jf);
        if (relations) {
            RelationReport rep = verify_relations(t, expected_relations_2d(s));
            for (const auto &item : rep.items)
                run.add(item.name, item.pass, item.detail);
            run.add("no unexpected nonzero brackets", rep.surplus.empty(),
                    rep.surplus.empty() ? "" : rep.surplus.front());
        }
        if (casimir)
            for (const auto &item : casimir_check(s))
                run.add(item.name, item.pass, item.detail);
        run.attach("table", table_json(t));
    } else {
        SystemSpec s = build_superintegrable_3d();
        GeneratorSet gens = generators_of(s);
        StructureTable t = commutation_table(gens);
        run.note("-- commutation table (J, Pi, S basis) --");
        print_table(run, t);
        run.add("commutation table closes in span", t.closed(),
                t.closed() ? "" : t.closure_failures.front());
        std::string jf;
        bool jac = jacobi_holds(t, &jf);
        run.add("jacobi identity holds", jac, jf);
        GeneratorSet split = e3_o3_basis(s);
        StructureTable ts = commutation_table(split);
        run.add("J-S / Pi / S basis closes in span", ts.closed(),
                ts.closed() ? "" : ts.closure_failures.front());
        if (relations) {
            RelationReport rep = verify_relations(ts, expected_relations_3d(s));
            std::map<std::string, std::pair<int, int>> families;
            for (const auto &item : rep.items) {
                std::string fam = item.name.substr(0, item.name.find(':'));
                families[fam].second++;
                if (item.pass)
                    families[fam].first++;
                if (!item.pass)
                    run.add(item.name, false, item.detail);
            }
            for (const auto &[fam, counts] : families)
                run.add("relation family " + fam, counts.first == counts.second,
                        std::to_string(counts.first) + "/" + std::to_string(counts.second));
            run.add("no unexpected nonzero brackets", rep.surplus.empty(),
                    rep.surplus.empty() ? "" : rep.surplus.front());
        }
        run.attach("table", table_json(t));
        run.attach("split_basis_table", table_json(ts));
    }
    return run.finish();
}

int cmd_gauge(const GlobalOpts &g, const std::string &alpha_dot_text, const std::string &v0_text,
              const std::string &v1_text) {
    // Free-form inputs: unknown plain identifiers become formal constants.
    std::vector<std::string> params;
    for (const std::string &text : {alpha_dot_text, v0_text, v1_text})
        for (const auto &id : scan_identifiers(text)) {
            if (id == "x" || id == "y" || id == "i" || id == "xi")
                continue;
            if (std::find(params.begin(), params.end(), id) == params.end())
                params.push_back(id);
        }
    ContextPtr ctx = make_context(Mode::planar, params);
    Expression adot = parse_alpha_dot(ctx, alpha_dot_text);
    Expression v0 = parse_expr(v0_text, ctx);
    Expression v1 = parse_expr(v1_text, ctx);

    Runner run("gauge", "planar-potentials", g);
    auto [v0t, v1t] = apply_gauge(v0, v1, adot);
    run.note("V0~ = " + to_string(v0t));
    run.note("V1~ = " + to_string(v1t));
    Expression before = gauge_invariant(v0, v1);
    Expression after = gauge_invariant(v0t, v1t);
    run.note("invariant V0 - (1/2) r^2 V1^2 = " + to_string(before));
    run.add("transformed potentials computed", true,
            "V1~ = " + to_string(v1t));
    run.add("gauge invariant unchanged", before == after,
            before == after ? "" : "residual " + to_string(after - before));
    return run.finish();
}

int cmd_limit(const GlobalOpts &g, const std::string &system_id) {
    if (system_id != "3d-superintegrable" && system_id != "2d-superintegrable") {
        std::cerr << "limit applies to 3d-superintegrable or 2d-superintegrable\n";
        return 2;
    }
    BuildOptions opts;
    opts.hbar = HbarMode::tracked;
    opts.verified = false;
    SystemSpec s = build_system(system_id, opts);
    Runner run("limit", system_id, g);
    Bindings b;
    b.bind_constant("hbar", Expression::zero(s.ctx));
    Expression v0_limit = substitute(s.v0, b);
    Expression v1_limit = substitute(s.v1, b);
    run.note("V0 = " + to_string(s.v0) + "   ->   " + to_string(v0_limit));
    run.note("V1 = " + to_string(s.v1) + "   ->   " + to_string(v1_limit));
    if (system_id == "3d-superintegrable") {
        run.add("V0 vanishes in the classical limit", v0_limit.is_zero(), to_string(s.v0));
        run.add("V1 vanishes in the classical limit", v1_limit.is_zero(), to_string(s.v1));
        bool all = true;
        for (const auto &[name, x] : s.integrals)
            all = all && commutator(s.hamiltonian, x).is_zero();
        run.add("tracked commutators vanish for formal hbar", all);
    } else {
        run.add("V0 carries no hbar dependence", v0_limit == s.v0);
        run.add("V1 carries no hbar dependence", v1_limit == s.v1);
    }
    return run.finish();
}

}  // namespace

int main(int argc, char **argv) {
    GlobalOpts g;
    CLI::App app{"exact verification workbench for spin-orbit integrable systems"};
    app.require_subcommand(1);
    app.add_option("--format", g.format, "report format: text or json")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    app.add_option("--seed", g.seed, "seed for randomized checks")->capture_default_str();
    app.add_flag("--quiet", g.quiet, "suppress streaming output");

    std::string system_id, gamma, v0_extra, space, stage, alg_system = "2d";
    std::string alpha_dot, v0_text = "0", v1_text = "0", limit_system = "3d-superintegrable";
    bool hbar = false, match = false, casimir = false, relations = false;
    int numeric = 0;

    CLI::App *verify = app.add_subcommand("verify", "check [H, X] = 0 for a cataloged system");
    verify->fallthrough();
    verify->add_option("system", system_id, "system id")->required();
    verify->add_option("--gamma", gamma, "value substituted for the coupling constant");
    verify->add_flag("--hbar", hbar, "track hbar as a formal constant");
    verify->add_option("--numeric-probe", numeric, "random spinors per integral");
    verify->add_option("--v0-extra", v0_extra, "perturbation added to V0");

    CLI::App *det = app.add_subcommand("determining", "generate the determining systems");
    det->fallthrough();
    det->add_option("--space", space, "2d or 3d")->required();
    det->add_option("--stage", stage, "second, first or zeroth (default: all)");
    det->add_flag("--match", match, "compare against the transcribed blocks");

    CLI::App *alg = app.add_subcommand("algebra", "structure constants and algebra checks");
    alg->fallthrough();
    alg->add_option("--system", alg_system, "2d or 3d")->required();
    alg->add_flag("--casimir", casimir, "check the Casimir identities (2d)");
    alg->add_flag("--relations", relations, "check the known relation families");

    CLI::App *gauge = app.add_subcommand("gauge", "apply a gauge transformation to potentials");
    gauge->fallthrough();
    gauge->add_option("--alpha-dot", alpha_dot, "derivative of the phase, a function of xi = y/x")
        ->required();
    gauge->add_option("--v0", v0_text, "scalar potential")->capture_default_str();
    gauge->add_option("--v1", v1_text, "spin-orbit potential")->capture_default_str();

    CLI::App *limit = app.add_subcommand("limit", "classical limit hbar -> 0 of the potentials");
    limit->fallthrough();
    limit->add_option("--system", limit_system, "system id")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return 2;
    }

    try {
        if (verify->parsed())
            return cmd_verify(g, system_id, gamma, hbar, numeric, v0_extra);
        if (det->parsed())
            return cmd_determining(g, space, stage, match);
        if (alg->parsed())
            return cmd_algebra(g, alg_system, casimir, relations);
        if (gauge->parsed())
            return cmd_gauge(g, alpha_dot, v0_text, v1_text);
        if (limit->parsed())
            return cmd_limit(g, limit_system);
    } catch (const ParseError &e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const VerificationError &e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return 1;
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
