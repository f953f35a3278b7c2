#pragma once

#include <initializer_list>
#include <vector>

namespace invlag {

/// Dense real polynomial, coefficients in ascending degree order
/// (coeffs[k] multiplies x^k). Trailing zeros are trimmed; the zero
/// polynomial is the empty coefficient list.
class Polynomial {
public:
    Polynomial() = default;
    Polynomial(std::initializer_list<double> coeffs);
    explicit Polynomial(std::vector<double> coeffs);

    /// Horner evaluation; returns the constant term exactly at x = 0.
    double operator()(double x) const;

    Polynomial derivative() const;

    /// Antiderivative with base point 0, i.e. the result vanishes at x = 0.
    Polynomial antiderivative() const;

    Polynomial scaled(double factor) const;

    /// Degree, or -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<double>& coeffs() const { return coeffs_; }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    bool operator==(const Polynomial&) const = default;

private:
    void trim();

    std::vector<double> coeffs_;
};

} // namespace invlag
