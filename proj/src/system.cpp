#include "invlag/system.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace invlag {

SystemSpec SystemSpec::make(double mass, double alpha2, Polynomial potential, Polynomial drag) {
    if (!(mass > 0.0)) throw std::invalid_argument("SystemSpec: mass must be > 0");
    if (!(alpha2 >= 0.0)) throw std::invalid_argument("SystemSpec: alpha2 must be >= 0");

    SystemSpec spec;
    spec.mass_ = mass;
    spec.alpha2_ = alpha2;
    spec.potential_ = std::move(potential);
    spec.potential_dx_ = spec.potential_.derivative();
    spec.drag_ = std::move(drag);
    spec.drag_anti_ = spec.drag_.antiderivative();
    // log W = -(2/m)(Gamma - alpha2 U)
    spec.log_weight_ = (spec.drag_anti_ - spec.potential_.scaled(alpha2)).scaled(-2.0 / mass);
    spec.log_weight_dx_ = spec.log_weight_.derivative();
    spec.v_max_ = alpha2 > 0.0 ? (1.0 - kVelocityMargin) / std::sqrt(alpha2)
                               : std::numeric_limits<double>::infinity();
    return spec;
}

SystemSpec SystemSpec::constant_force(double mass, double lambda, double gamma_const, double c) {
    if (!(mass > 0.0)) throw std::invalid_argument("constant_force: mass must be > 0");
    if (!(lambda > 0.0)) throw std::invalid_argument("constant_force: lambda must be > 0");
    if (!(gamma_const >= 0.0)) throw std::invalid_argument("constant_force: gamma_const must be >= 0");
    if (!(c > 0.0)) throw std::invalid_argument("constant_force: c must be > 0");

    const double alpha2 = std::isinf(c) ? 0.0 : 3.0 / (2.0 * c * c);
    SystemSpec spec = make(mass, alpha2, Polynomial{0.0, -lambda}, Polynomial{-gamma_const});
    spec.preset_ = Preset{lambda, gamma_const, lambda * alpha2 - gamma_const};
    return spec;
}

bool SystemSpec::in_velocity_domain(double v) const {
    return alpha2_ == 0.0 ? std::isfinite(v) : std::abs(v) <= v_max_;
}

void SystemSpec::require_velocity(double v) const {
    if (!in_velocity_domain(v)) {
        std::ostringstream msg;
        msg << "velocity " << v << " outside admissible domain |v| <= " << v_max_;
        throw std::domain_error(msg.str());
    }
}

double force(const SystemSpec& spec, const State& s) {
    spec.require_velocity(s.v);
    const double v2 = s.v * s.v;
    return (-spec.potential_dx()(s.x) + spec.drag()(s.x) * v2) * (1.0 - spec.alpha2() * v2) /
           spec.mass();
}

} // namespace invlag
