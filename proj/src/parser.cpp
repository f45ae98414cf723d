#include "zerostrip/parser.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <optional>

#include "zerostrip/errors.hpp"

namespace zerostrip {

namespace {

struct Cursor {
    std::string_view text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= text.size();
    }
    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }
    bool consume(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!consume(c))
            throw ValidationError("series parse error: expected '" + std::string(1, c) +
                                  "' at offset " + std::to_string(pos) + " in '" +
                                  std::string(text) + "'");
    }
    std::string ident() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_' ||
                text[pos] == '-'))
            ++pos;
        return std::string(text.substr(start, pos - start));
    }
};

// number := [+-]? digits [ '.' digits ] [ (e|E) [+-]? digits ]
std::optional<double> read_number(Cursor& c) {
    c.skip_ws();
    std::size_t start = c.pos;
    std::size_t p = c.pos;
    const auto& t = c.text;
    if (p < t.size() && (t[p] == '+' || t[p] == '-')) ++p;
    std::size_t digits = p;
    while (p < t.size() && (std::isdigit(static_cast<unsigned char>(t[p])) || t[p] == '.')) ++p;
    if (p == digits) return std::nullopt;
    if (p < t.size() && (t[p] == 'e' || t[p] == 'E')) {
        std::size_t q = p + 1;
        if (q < t.size() && (t[q] == '+' || t[q] == '-')) ++q;
        if (q < t.size() && std::isdigit(static_cast<unsigned char>(t[q]))) {
            ++q;
            while (q < t.size() && std::isdigit(static_cast<unsigned char>(t[q]))) ++q;
            p = q;
        }
    }
    double v = std::strtod(std::string(t.substr(start, p - start)).c_str(), nullptr);
    c.pos = p;
    return v;
}

// complex := [+-]? ( 'i' | number ['i'] ) [ (+|-) (number['i'] | 'i') ]
cplx read_complex(Cursor& c) {
    c.skip_ws();
    if (c.consume('(')) {
        cplx v = read_complex(c);
        c.expect(')');
        return v;
    }
    double re = 0.0, im = 0.0;
    bool have_any = false;
    for (int part = 0; part < 2; ++part) {
        c.skip_ws();
        double sign = 1.0;
        std::size_t save = c.pos;
        if (part == 1) {
            if (c.consume('+'))
                sign = 1.0;
            else if (c.consume('-'))
                sign = -1.0;
            else
                break;
        }
        c.skip_ws();
        if (c.peek() == 'i' || c.peek() == 'I') {
            ++c.pos;
            im += sign;
            have_any = true;
            continue;
        }
        auto num = read_number(c);
        if (!num) {
            c.pos = save;
            break;
        }
        if (c.pos < c.text.size() && (c.text[c.pos] == 'i' || c.text[c.pos] == 'I')) {
            ++c.pos;
            im += sign * *num;
        } else {
            re += sign * *num;
        }
        have_any = true;
    }
    if (!have_any) throw ValidationError("series parse error: expected complex literal");
    return {re, im};
}

Series parse_expr(Cursor& c);

Series parse_character_l(Cursor& c) {
    c.expect('(');
    std::optional<uint64_t> mod;
    std::optional<std::size_t> index;
    bool primitive_only = false;
    std::vector<CharacterConstraint> constraints;
    for (;;) {
        std::string key = c.ident();
        if (key == "mod") {
            c.expect('=');
            auto v = read_number(c);
            if (!v) throw ValidationError("L(...): mod= needs an integer");
            mod = static_cast<uint64_t>(*v);
        } else if (key == "index") {
            c.expect('=');
            auto v = read_number(c);
            if (!v) throw ValidationError("L(...): index= needs an integer");
            index = static_cast<std::size_t>(*v);
        } else if (key == "primitive") {
            primitive_only = true;
        } else if (key == "value") {
            c.expect('(');
            auto at = read_number(c);
            if (!at) throw ValidationError("L(...): value(n) needs an integer");
            c.expect(')');
            c.expect('=');
            constraints.push_back({static_cast<int64_t>(*at), read_complex(c)});
        } else {
            throw ValidationError("L(...): unknown key '" + key + "'");
        }
        if (c.consume(',')) continue;
        c.expect(')');
        break;
    }
    if (!mod) throw ValidationError("L(...): mod= is required");
    return Series::character(find_character(*mod, constraints, index, primitive_only));
}

// lin term := [complex '*'] expr, terms joined by top-level +/-
Series parse_lin(Cursor& c) {
    c.expect('(');
    std::vector<std::pair<cplx, Series>> terms;
    bool first = true;
    for (;;) {
        double sign = 1.0;
        c.skip_ws();
        if (!first || c.peek() == '+' || c.peek() == '-') {
            if (c.consume('+'))
                sign = 1.0;
            else if (c.consume('-'))
                sign = -1.0;
            else if (!first)
                break;
        }
        first = false;
        // try: complex '*' expr; otherwise bare expr with coefficient 1
        std::size_t save = c.pos;
        cplx coef{1.0, 0.0};
        bool have_coef = false;
        try {
            cplx v = read_complex(c);
            if (c.consume('*')) {
                coef = v;
                have_coef = true;
            } else {
                c.pos = save;
            }
        } catch (const ValidationError&) {
            c.pos = save;
        }
        (void)have_coef;
        Series s = parse_expr(c);
        terms.emplace_back(sign * coef, s);
        c.skip_ws();
        if (c.peek() == '+' || c.peek() == '-') continue;
        break;
    }
    c.expect(')');
    return Series::linear_combination(std::move(terms));
}

Series parse_expr(Cursor& c) {
    std::string head = c.ident();
    if (head == "zeta") return Series::zeta();
    if (head == "L") return parse_character_l(c);
    if (head == "conj") {
        c.expect('(');
        Series s = parse_expr(c);
        c.expect(')');
        return Series::conjugate(s);
    }
    if (head == "lin") return parse_lin(c);
    if (head == "conv") {
        c.expect('(');
        Series a = parse_expr(c);
        c.expect(',');
        Series b = parse_expr(c);
        c.expect(')');
        return Series::convolution(a, b);
    }
    if (head == "inv") {
        c.expect('(');
        Series s = parse_expr(c);
        c.expect(')');
        return Series::inverse(s);
    }
    if (head == "explicit") {
        c.expect('(');
        std::vector<cplx> coeffs;
        for (;;) {
            coeffs.push_back(read_complex(c));
            if (c.consume(',')) continue;
            c.expect(')');
            break;
        }
        return Series::explicit_coeffs(std::move(coeffs));
    }
    throw ValidationError("series parse error: unknown head '" + head + "'");
}

}  // namespace

Series parse_series(const std::string& text) {
    Cursor c{text, 0};
    Series s = parse_expr(c);
    if (!c.eof())
        throw ValidationError("series parse error: trailing input at offset " +
                              std::to_string(c.pos) + " in '" + text + "'");
    return s;
}

cplx parse_complex(const std::string& text) {
    Cursor c{text, 0};
    cplx v = read_complex(c);
    if (!c.eof()) throw ValidationError("complex parse error: trailing input in '" + text + "'");
    return v;
}

std::vector<std::string> split_top_level(const std::string& text, char sep) {
    std::vector<std::string> parts;
    int depth = 0;
    std::string cur;
    for (char ch : text) {
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (ch == sep && depth == 0) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    parts.push_back(cur);
    return parts;
}

}  // namespace zerostrip
