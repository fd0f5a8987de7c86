#pragma once

#include <array>

#include "dubrovnik/diagram.hpp"
#include "dubrovnik/laurent.hpp"

namespace dubrovnik {

// The four basis tangles.  P joins NW-SW and NE-SE (identity pattern),
// Q joins NW-NE and SW-SE (cap-cup).  R1 is the crossing whose NW-SE strand
// passes over; R2 the one whose NE-SW strand passes over.
inline Diagram basis_P() { return Diagram::tangle({}, {0, 1, 0, 1}); }
inline Diagram basis_Q() { return Diagram::tangle({}, {0, 0, 1, 1}); }
inline Diagram basis_R1() {
    return Diagram::tangle({Crossing{{1, 0, 2, 3}}}, {0, 1, 2, 3});
}
inline Diagram basis_R2() {
    return Diagram::tangle({Crossing{{0, 2, 3, 1}}}, {0, 1, 2, 3});
}

enum class BasisTangle { P = 0, Q = 1, R1 = 2, R2 = 3 };

inline Diagram basis_diagram(BasisTangle b) {
    switch (b) {
        case BasisTangle::P: return basis_P();
        case BasisTangle::Q: return basis_Q();
        case BasisTangle::R1: return basis_R1();
        case BasisTangle::R2: return basis_R2();
    }
    fail(ErrorKind::Internal, "bad basis tangle");
}

// A tangle written over the free basis {P, Q, R1, R2}, remembering the
// crossing count and longest-bridge length of the diagram it came from so
// the degree bound z_degree(f) <= N - B can be checked.
struct M2Element {
    LaurentPoly f_P, f_Q, f_R1, f_R2;
    int source_n = 0;
    int source_b = 0;

    const LaurentPoly& coeff(BasisTangle b) const {
        switch (b) {
            case BasisTangle::P: return f_P;
            case BasisTangle::Q: return f_Q;
            case BasisTangle::R1: return f_R1;
            case BasisTangle::R2: return f_R2;
        }
        fail(ErrorKind::Internal, "bad basis tangle");
    }

    static M2Element pure(BasisTangle b, LaurentPoly scale) {
        M2Element m;
        switch (b) {
            case BasisTangle::P: m.f_P = std::move(scale); break;
            case BasisTangle::Q: m.f_Q = std::move(scale); break;
            case BasisTangle::R1: m.f_R1 = std::move(scale); break;
            case BasisTangle::R2: m.f_R2 = std::move(scale); break;
        }
        return m;
    }

    M2Element& operator+=(const M2Element& o) {
        f_P += o.f_P;
        f_Q += o.f_Q;
        f_R1 += o.f_R1;
        f_R2 += o.f_R2;
        return *this;
    }

    friend M2Element operator+(M2Element a, const M2Element& b) {
        a += b;
        return a;
    }

    friend M2Element operator-(M2Element a, const M2Element& b) {
        a.f_P -= b.f_P;
        a.f_Q -= b.f_Q;
        a.f_R1 -= b.f_R1;
        a.f_R2 -= b.f_R2;
        return a;
    }

    friend M2Element operator*(const LaurentPoly& s, M2Element m) {
        m.f_P = s * m.f_P;
        m.f_Q = s * m.f_Q;
        m.f_R1 = s * m.f_R1;
        m.f_R2 = s * m.f_R2;
        return m;
    }

    bool operator==(const M2Element& o) const {
        return f_P == o.f_P && f_Q == o.f_Q && f_R1 == o.f_R1 && f_R2 == o.f_R2;
    }
};

struct Basis3 {
    LaurentPoly g_P, g_Q, g_R1;
    bool operator==(const Basis3&) const = default;
};

// Eliminate the R2 coordinate through R2 = zP - zQ + R1.
inline Basis3 to_basis3(const M2Element& m) {
    LaurentPoly z = LaurentPoly::z_power(1);
    return Basis3{m.f_P + z * m.f_R2, m.f_Q - z * m.f_R2, m.f_R1 + m.f_R2};
}

} // namespace dubrovnik
