#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "spinorbit/expression.hpp"

namespace spinorbit {

struct ParseError : Error {
    size_t position;
    ParseError(const std::string &msg, size_t pos)
        : Error(msg + " (at position " + std::to_string(pos) + ")"), position(pos) {}
};

namespace detail {

// Grammar (also what the canonical printer emits):
//   expr    := ['+'|'-'] term (('+'|'-') term)*
//   term    := factor (('*'|'/') factor)*
//   factor  := primary ['^' ['-'] digits]
//   primary := digits | 'i' | identifier | '(' expr ')'
class Parser {
  public:
    Parser(std::string_view text, ContextPtr ctx) : text_(text), ctx_(std::move(ctx)) {}

    Expression parse() {
        Expression e = parse_expr();
        skip_ws();
        if (pos_ != text_.size())
            throw ParseError("unexpected trailing input", pos_);
        return e;
    }

  private:
    std::string_view text_;
    ContextPtr ctx_;
    size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }
    bool peek(char c) {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
    }
    bool accept(char c) {
        if (peek(c)) {
            ++pos_;
            return true;
        }
        return false;
    }

    Expression parse_expr() {
        skip_ws();
        bool neg = false;
        if (accept('-'))
            neg = true;
        else
            accept('+');
        Expression acc = parse_term();
        if (neg)
            acc = -acc;
        while (true) {
            if (accept('+'))
                acc += parse_term();
            else if (accept('-'))
                acc -= parse_term();
            else
                break;
        }
        return acc;
    }

    Expression parse_term() {
        Expression acc = parse_factor();
        while (true) {
            if (accept('*')) {
                acc *= parse_factor();
            } else if (peek('/')) {
                size_t slash = pos_;
                ++pos_;
                Expression d = parse_factor();
                try {
                    acc = div(acc, d);
                } catch (const DivisionError &err) {
                    throw ParseError(err.what(), slash);
                }
            } else {
                break;
            }
        }
        return acc;
    }

    Expression parse_factor() {
        Expression base = parse_primary();
        if (accept('^')) {
            skip_ws();
            bool neg = accept('-');
            size_t start = pos_;
            long k = parse_integer();
            if (neg)
                k = -k;
            try {
                return pow(base, static_cast<int>(k));
            } catch (const DivisionError &err) {
                throw ParseError(err.what(), start);
            }
        }
        return base;
    }

    Expression parse_primary() {
        skip_ws();
        if (pos_ >= text_.size())
            throw ParseError("unexpected end of input", pos_);
        char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)))
            return Expression::integer(ctx_, parse_integer());
        if (c == '(') {
            ++pos_;
            Expression e = parse_expr();
            if (!accept(')'))
                throw ParseError("expected ')'", pos_);
            return e;
        }
        if (std::isalpha(static_cast<unsigned char>(c)))
            return parse_identifier();
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }

    long parse_integer() {
        skip_ws();
        size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        if (pos_ == start)
            throw ParseError("expected an integer", pos_);
        std::string digits(text_.substr(start, pos_ - start));
        if (digits.size() > 18)
            throw ParseError("integer literal too large", start);
        return std::stol(digits);
    }

    Expression parse_identifier() {
        size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        std::string name(text_.substr(start, pos_ - start));
        if (name == "i")
            return Expression::imaginary_unit(ctx_);
        if (name == "x" || name == "y" || name == "z") {
            int axis = name == "x" ? 0 : name == "y" ? 1 : 2;
            if (axis >= ctx_->n_coords())
                throw ParseError("coordinate '" + name + "' is not part of the active mode", start);
            return Expression::coordinate(ctx_, axis);
        }
        if (ctx_->has_param(name))
            return Expression::parameter(ctx_, name);

        std::string base = name, suffix;
        size_t us = name.find('_');
        if (us != std::string::npos) {
            base = name.substr(0, us);
            suffix = name.substr(us + 1);
        }
        const JetDecl *decl = ctx_->find_jet(base);
        if (!decl)
            throw ParseError("unknown identifier '" + name + "'", start);
        Symbol s = ctx_->jet_symbol(base);
        if (!suffix.empty()) {
            if (decl->rule == JetRule::radial) {
                for (char ch : suffix)
                    if (ch != 'u')
                        throw ParseError("radial function " + base +
                                             " only takes 'u' derivative suffixes",
                                         start);
                s.radial_order = static_cast<uint8_t>(suffix.size());
            } else if (decl->rule == JetRule::free) {
                for (char ch : suffix) {
                    int axis = ch == 'x' ? 0 : ch == 'y' ? 1 : ch == 'z' ? 2 : -1;
                    if (axis < 0 || axis >= ctx_->n_coords())
                        throw ParseError("bad derivative suffix on '" + name + "'", start);
                    if (!decl->deps[axis])
                        throw ParseError("derivative of " + base + " along " +
                                             axis_name(axis) + " is outside its dependency set",
                                         start);
                    s.alpha[axis] = static_cast<uint8_t>(s.alpha[axis] + 1);
                }
            } else {
                throw ParseError("antiderivative " + base + " takes no derivative suffix", start);
            }
        }
        return Expression::symbol(ctx_, s);
    }
};

}  // namespace detail

inline Expression parse_expr(std::string_view text, ContextPtr ctx) {
    return detail::Parser(text, std::move(ctx)).parse();
}

// Plain identifiers appearing in free-form user input; used by callers that
// auto-declare constants before a strict parse.
inline std::vector<std::string> scan_identifiers(std::string_view text) {
    std::vector<std::string> out;
    size_t i = 0;
    while (i < text.size()) {
        if (std::isalpha(static_cast<unsigned char>(text[i]))) {
            size_t start = i;
            while (i < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_'))
                ++i;
            out.emplace_back(text.substr(start, i - start));
        } else {
            ++i;
        }
    }
    return out;
}

}  // namespace spinorbit
