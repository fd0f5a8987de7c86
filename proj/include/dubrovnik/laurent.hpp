#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdlib>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "dubrovnik/errors.hpp"

namespace dubrovnik {

using Int = boost::multiprecision::cpp_int;

// Exponent pair of one monomial coef * l^l * z^z.  Map order (z, then l),
// both ascending, doubles as the canonical term order in rendered output.
struct ExpKey {
    int z = 0;
    int l = 0;
    auto operator<=>(const ExpKey&) const = default;
};

// Laurent polynomial in z and l (lambda) with arbitrary-precision integer
// coefficients.  Terms with zero coefficient are never stored.
class LaurentPoly {
  public:
    LaurentPoly() = default;

    static LaurentPoly zero() { return LaurentPoly(); }

    static LaurentPoly monomial(Int coef, int z_exp, int l_exp) {
        LaurentPoly p;
        if (coef != 0) p.terms_[{z_exp, l_exp}] = std::move(coef);
        return p;
    }

    static LaurentPoly one() { return monomial(1, 0, 0); }
    static LaurentPoly z_power(int k) { return monomial(1, k, 0); }
    static LaurentPoly lambda_power(int k) { return monomial(1, 0, k); }

    // delta = (l^-1 - l) z^-1 + 1, the value of a split unknot factor.
    static LaurentPoly delta() {
        LaurentPoly p;
        p.terms_[{-1, -1}] = 1;
        p.terms_[{-1, 1}] = -1;
        p.terms_[{0, 0}] = 1;
        return p;
    }

    static LaurentPoly delta_power(int k) {
        if (k < 0) fail(ErrorKind::Internal, "negative delta power");
        LaurentPoly p = one();
        for (int i = 0; i < k; ++i) p = p * delta();
        return p;
    }

    bool is_zero() const { return terms_.empty(); }

    Int coefficient(int z_exp, int l_exp) const {
        auto it = terms_.find({z_exp, l_exp});
        return it == terms_.end() ? Int(0) : it->second;
    }

    const std::map<ExpKey, Int>& terms() const { return terms_; }

    std::optional<int> z_degree() const {
        if (terms_.empty()) return std::nullopt;
        return terms_.rbegin()->first.z;
    }

    std::optional<int> z_min_degree() const {
        if (terms_.empty()) return std::nullopt;
        return terms_.begin()->first.z;
    }

    std::optional<int> l_degree() const {
        if (terms_.empty()) return std::nullopt;
        int best = terms_.begin()->first.l;
        for (const auto& [key, coef] : terms_) best = std::max(best, key.l);
        return best;
    }

    std::optional<int> l_min_degree() const {
        if (terms_.empty()) return std::nullopt;
        int best = terms_.begin()->first.l;
        for (const auto& [key, coef] : terms_) best = std::min(best, key.l);
        return best;
    }

    // The coefficient of z^k, as a Laurent polynomial in l alone.
    LaurentPoly z_part(int k) const {
        LaurentPoly p;
        for (const auto& [key, coef] : terms_)
            if (key.z == k) p.terms_[{0, key.l}] = coef;
        return p;
    }

    LaurentPoly& operator+=(const LaurentPoly& o) {
        for (const auto& [key, coef] : o.terms_) add_term(key, coef);
        return *this;
    }

    LaurentPoly& operator-=(const LaurentPoly& o) {
        for (const auto& [key, coef] : o.terms_) add_term(key, -coef);
        return *this;
    }

    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) {
        a += b;
        return a;
    }

    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) {
        a -= b;
        return a;
    }

    LaurentPoly operator-() const {
        LaurentPoly p;
        for (const auto& [key, coef] : terms_) p.terms_[key] = -coef;
        return p;
    }

    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly p;
        for (const auto& [ka, ca] : a.terms_)
            for (const auto& [kb, cb] : b.terms_)
                p.add_term({ka.z + kb.z, ka.l + kb.l}, ca * cb);
        return p;
    }

    friend LaurentPoly operator*(const Int& c, const LaurentPoly& a) {
        LaurentPoly p;
        if (c == 0) return p;
        for (const auto& [key, coef] : a.terms_) p.terms_[key] = c * coef;
        return p;
    }

    // Multiply in place by z^dz * l^dl (exponent shift).
    LaurentPoly& mul_monomial(int dz, int dl) {
        if (dz == 0 && dl == 0) return *this;
        std::map<ExpKey, Int> shifted;
        for (auto& [key, coef] : terms_)
            shifted[{key.z + dz, key.l + dl}] = std::move(coef);
        terms_ = std::move(shifted);
        return *this;
    }

    bool operator==(const LaurentPoly& o) const { return terms_ == o.terms_; }

    // One term per "coef l^a z^b", joined by " + "; the zero polynomial
    // renders as "0".  Exponents are printed even when zero.
    std::string render() const {
        if (terms_.empty()) return "0";
        std::ostringstream out;
        bool first = true;
        for (const auto& [key, coef] : terms_) {
            if (!first) out << " + ";
            first = false;
            out << coef << " l^" << key.l << " z^" << key.z;
        }
        return out.str();
    }

    static LaurentPoly parse(const std::string& text) {
        std::istringstream in(text);
        std::string tok;
        std::vector<std::string> toks;
        while (in >> tok) toks.push_back(tok);
        if (toks.empty())
            fail(ErrorKind::MalformedLine, "empty polynomial");
        if (toks.size() == 1 && toks[0] == "0") return zero();
        LaurentPoly p;
        size_t i = 0;
        while (i < toks.size()) {
            if (i + 3 > toks.size())
                fail(ErrorKind::MalformedLine,
                     "truncated polynomial term near '" + toks[i] + "'");
            Int coef = parse_int(toks[i]);
            int le = parse_exp(toks[i + 1], 'l');
            int ze = parse_exp(toks[i + 2], 'z');
            p.add_term({ze, le}, coef);
            i += 3;
            if (i < toks.size()) {
                if (toks[i] != "+")
                    fail(ErrorKind::MalformedLine,
                         "expected '+' between terms, got '" + toks[i] + "'");
                ++i;
                if (i == toks.size())
                    fail(ErrorKind::MalformedLine, "dangling '+' in polynomial");
            }
        }
        return p;
    }

  private:
    void add_term(ExpKey key, Int delta_coef) {
        if (delta_coef == 0) return;
        auto [it, inserted] = terms_.try_emplace(key, delta_coef);
        if (!inserted) {
            it->second += delta_coef;
            if (it->second == 0) terms_.erase(it);
        }
    }

    static Int parse_int(const std::string& s) {
        if (s.empty() || s.find_first_not_of("-0123456789") != std::string::npos ||
            (s[0] == '-' && s.size() == 1))
            fail(ErrorKind::MalformedLine, "bad coefficient '" + s + "'");
        return Int(s);
    }

    static int parse_exp(const std::string& s, char var) {
        if (s.size() < 3 || s[0] != var || s[1] != '^')
            fail(ErrorKind::MalformedLine,
                 std::string("expected ") + var + "^<int>, got '" + s + "'");
        errno = 0;
        char* end = nullptr;
        long v = std::strtol(s.c_str() + 2, &end, 10);
        if (errno != 0 || *end != '\0' || v < -1000000 || v > 1000000)
            fail(ErrorKind::MalformedLine, "bad exponent '" + s + "'");
        return static_cast<int>(v);
    }

    std::map<ExpKey, Int> terms_;
};

} // namespace dubrovnik
