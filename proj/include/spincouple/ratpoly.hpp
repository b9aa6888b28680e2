// spincouple: exact arithmetic for spin-orbit coupling coefficients
// SPDX-License-Identifier: MIT

#pragma once

#include <vector>

#include "spincouple/rational.hpp"

namespace spincouple {

/// Polynomial with rational coefficients, stored in ascending degree.
/// The zero polynomial has an empty coefficient list; any other value
/// keeps a nonzero leading coefficient.
class RatPoly {
public:
    RatPoly() = default;
    explicit RatPoly(std::vector<Rational> coeffs);

    static RatPoly constant(Rational c);
    static RatPoly monomial(int degree, Rational c = Rational(1));

    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    /// Coefficient of x^k; zero beyond the stored degree.
    Rational coeff(int k) const;

    Rational eval(const Rational& x) const;
    double eval(double x) const;

    /// Exact derivative of the given order (order >= 0).
    RatPoly derivative(int order = 1) const;

    RatPoly& operator+=(const RatPoly& o);
    RatPoly& operator-=(const RatPoly& o);
    RatPoly& operator*=(const RatPoly& o);
    RatPoly& operator*=(const Rational& s);

    RatPoly operator-() const;

    friend RatPoly operator+(RatPoly a, const RatPoly& b) { return a += b; }
    friend RatPoly operator-(RatPoly a, const RatPoly& b) { return a -= b; }
    friend RatPoly operator*(RatPoly a, const RatPoly& b) { return a *= b; }
    friend RatPoly operator*(RatPoly a, const Rational& s) { return a *= s; }
    friend RatPoly operator*(const Rational& s, RatPoly a) { return a *= s; }

    friend bool operator==(const RatPoly& a, const RatPoly& b) {
        return a.coeffs_ == b.coeffs_;
    }

private:
    void trim();

    std::vector<Rational> coeffs_;
};

/// Legendre polynomial P_l differentiated k times, with exact
/// coefficients; the zero polynomial when k exceeds l.
RatPoly legendre(int l, int k = 0);

}  // namespace spincouple
