#pragma once

#include "jacsob/jacobi.hpp"

#include <vector>

namespace jacsob {

/// Finite sums of terms coef * sin(theta/2)^a * cos(theta/2)^b with real
/// exponents. Closed under d/dtheta, products, and the first-order operators
/// D and D*, so singular closed forms can be differentiated exactly.
class HalfAngleExpr {
public:
    struct Term {
        double coef;
        double a;
        double b;
    };

    HalfAngleExpr() = default;
    explicit HalfAngleExpr(std::vector<Term> terms);

    /// coef * s^a * c^b
    static HalfAngleExpr monomial(double coef, double a, double b);

    /// Psi^{alpha,beta} = s^{alpha+1/2} c^{beta+1/2}
    static HalfAngleExpr psi(double alpha, double beta);

    const std::vector<Term>& terms() const noexcept { return terms_; }

    double operator()(const Angle& t) const;
    double operator()(double theta) const { return (*this)(Angle::at(theta)); }

    HalfAngleExpr derivative() const;

    /// D_{alpha beta} f = f' - (2 alpha + 1)/4 cot(theta/2) f + (2 beta + 1)/4 tan(theta/2) f
    HalfAngleExpr apply_D(const JacobiParams& params) const;

    /// D*_{alpha beta} f = -f' - (2 alpha + 1)/4 cot(theta/2) f + (2 beta + 1)/4 tan(theta/2) f
    HalfAngleExpr apply_D_star(const JacobiParams& params) const;

    HalfAngleExpr operator+(const HalfAngleExpr& other) const;
    HalfAngleExpr operator*(const HalfAngleExpr& other) const;
    HalfAngleExpr operator*(double k) const;

private:
    void normalize();

    std::vector<Term> terms_;
};

} // namespace jacsob
