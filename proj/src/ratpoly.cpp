// spincouple: exact arithmetic for spin-orbit coupling coefficients
// SPDX-License-Identifier: MIT

#include "spincouple/ratpoly.hpp"

#include <deque>
#include <mutex>
#include <stdexcept>
#include <utility>

#include "spincouple/errors.hpp"

namespace spincouple {

RatPoly::RatPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

RatPoly RatPoly::constant(Rational c) { return RatPoly({std::move(c)}); }

RatPoly RatPoly::monomial(int degree, Rational c) {
    if (degree < 0) throw std::invalid_argument("monomial degree must be non-negative");
    std::vector<Rational> coeffs(static_cast<std::size_t>(degree) + 1);
    coeffs.back() = std::move(c);
    return RatPoly(std::move(coeffs));
}

Rational RatPoly::coeff(int k) const {
    if (k < 0) throw std::invalid_argument("coefficient index must be non-negative");
    if (k >= static_cast<int>(coeffs_.size())) return {};
    return coeffs_[static_cast<std::size_t>(k)];
}

Rational RatPoly::eval(const Rational& x) const {
    Rational acc;
    for (std::size_t k = coeffs_.size(); k-- > 0;) acc = acc * x + coeffs_[k];
    return acc;
}

double RatPoly::eval(double x) const {
    double acc = 0.0;
    for (std::size_t k = coeffs_.size(); k-- > 0;) acc = acc * x + to_double(coeffs_[k]);
    return acc;
}

RatPoly RatPoly::derivative(int order) const {
    if (order < 0) throw std::invalid_argument("derivative order must be non-negative");
    if (order == 0) return *this;
    if (order > degree()) return {};
    std::vector<Rational> out(coeffs_.size() - static_cast<std::size_t>(order));
    for (std::size_t k = 0; k < out.size(); ++k) {
        Rational drop = 1;
        for (int j = 0; j < order; ++j) drop *= static_cast<int>(k) + order - j;
        out[k] = coeffs_[k + static_cast<std::size_t>(order)] * drop;
    }
    return RatPoly(std::move(out));
}

RatPoly& RatPoly::operator+=(const RatPoly& o) {
    if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
    trim();
    return *this;
}

RatPoly& RatPoly::operator-=(const RatPoly& o) {
    if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
    trim();
    return *this;
}

RatPoly& RatPoly::operator*=(const RatPoly& o) {
    if (is_zero() || o.is_zero()) {
        coeffs_.clear();
        return *this;
    }
    std::vector<Rational> out(coeffs_.size() + o.coeffs_.size() - 1);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
            out[i + j] += coeffs_[i] * o.coeffs_[j];
    coeffs_ = std::move(out);
    trim();
    return *this;
}

RatPoly& RatPoly::operator*=(const Rational& s) {
    if (s == 0) {
        coeffs_.clear();
        return *this;
    }
    for (Rational& c : coeffs_) c *= s;
    return *this;
}

RatPoly RatPoly::operator-() const {
    RatPoly p = *this;
    for (Rational& c : p.coeffs_) c = -c;
    return p;
}

void RatPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

namespace {

/// P_l by the three-term recurrence, cached for the program lifetime.
const RatPoly& legendre_ref(int l) {
    static std::deque<RatPoly> cache{RatPoly::constant(1), RatPoly::monomial(1)};
    static std::mutex mu;
    std::scoped_lock lock(mu);
    while (static_cast<int>(cache.size()) <= l) {
        const int n = static_cast<int>(cache.size()) - 1;
        RatPoly next = RatPoly::monomial(1, Rational(2 * n + 1, n + 1)) * cache.back();
        next -= Rational(n, n + 1) * cache[static_cast<std::size_t>(n - 1)];
        cache.push_back(std::move(next));
    }
    return cache[static_cast<std::size_t>(l)];
}

}  // namespace

RatPoly legendre(int l, int k) {
    if (l < 0) throw InvalidQuantumNumbersError("Legendre degree must be non-negative");
    if (k < 0) throw std::invalid_argument("derivative order must be non-negative");
    return legendre_ref(l).derivative(k);
}

}  // namespace spincouple
