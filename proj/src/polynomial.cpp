#include "invlag/polynomial.hpp"

#include <algorithm>
#include <utility>

namespace invlag {

Polynomial::Polynomial(std::initializer_list<double> coeffs) : coeffs_(coeffs) { trim(); }

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void Polynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

double Polynomial::operator()(double x) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Polynomial Polynomial::derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<double> d(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k)
        d[k - 1] = coeffs_[k] * static_cast<double>(k);
    return Polynomial(std::move(d));
}

Polynomial Polynomial::antiderivative() const {
    if (coeffs_.empty()) return {};
    std::vector<double> a(coeffs_.size() + 1, 0.0);
    for (std::size_t k = 0; k < coeffs_.size(); ++k)
        a[k + 1] = coeffs_[k] / static_cast<double>(k + 1);
    return Polynomial(std::move(a));
}

Polynomial Polynomial::scaled(double factor) const {
    std::vector<double> s(coeffs_);
    for (double& c : s) c *= factor;
    return Polynomial(std::move(s));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<double> s(std::max(a.coeffs_.size(), b.coeffs_.size()), 0.0);
    for (std::size_t k = 0; k < a.coeffs_.size(); ++k) s[k] += a.coeffs_[k];
    for (std::size_t k = 0; k < b.coeffs_.size(); ++k) s[k] += b.coeffs_[k];
    return Polynomial(std::move(s));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    std::vector<double> s(std::max(a.coeffs_.size(), b.coeffs_.size()), 0.0);
    for (std::size_t k = 0; k < a.coeffs_.size(); ++k) s[k] += a.coeffs_[k];
    for (std::size_t k = 0; k < b.coeffs_.size(); ++k) s[k] -= b.coeffs_[k];
    return Polynomial(std::move(s));
}

} // namespace invlag
