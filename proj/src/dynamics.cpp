#include "nanofall/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace nanofall {

namespace {

// Dormand-Prince 5(4) tableau (FSAL).
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                 a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                 b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
constexpr double e1 = 35.0 / 384.0 - 5179.0 / 57600.0, e3 = 500.0 / 1113.0 - 7571.0 / 16695.0,
                 e4 = 125.0 / 192.0 - 393.0 / 640.0, e5 = -2187.0 / 6784.0 + 92097.0 / 339200.0,
                 e6 = 11.0 / 84.0 - 187.0 / 2100.0, e7 = -1.0 / 40.0;

template <std::size_t N>
using Arr = std::array<double, N>;

template <std::size_t N, class F>
void axpy(Arr<N>& out, const Arr<N>& y, double h, const F& coeffs, const Arr<N>* k, int stages) {
    for (std::size_t i = 0; i < N; ++i) {
        double acc = 0.0;
        for (int s = 0; s < stages; ++s) acc += coeffs[s] * k[s][i];
        out[i] = y[i] + h * acc;
    }
}

/// Adaptive RK45 over a fixed span. `accept` may veto a proposed state
/// (e.g. Re A <= 0), forcing a retry with a smaller step.
template <std::size_t N, class Rhs, class Accept>
Arr<N> integrate_span(Arr<N> y, double span, const Rhs& rhs, const Accept& accept,
                      double rel_tol, double abs_tol, double max_step, double time_scale) {
    if (span == 0.0) return y;
    Arr<N> k[7];
    rhs(y, k[0]);
    double t = 0.0;
    double h = span / 64.0;
    if (max_step > 0.0) h = std::min(h, max_step);
    long iter = 0;
    const long max_iter = 200000000L;
    while (t < span) {
        const double remaining = span - t;
        if (remaining <= span * 1e-14) break; // sub-ulp sliver, done
        const bool last = h >= remaining;
        if (last) h = remaining;
        Arr<N> tmp, y5;
        axpy(tmp, y, h, Arr<7>{a21}, k, 1);
        rhs(tmp, k[1]);
        axpy(tmp, y, h, Arr<7>{a31, a32}, k, 2);
        rhs(tmp, k[2]);
        axpy(tmp, y, h, Arr<7>{a41, a42, a43}, k, 3);
        rhs(tmp, k[3]);
        axpy(tmp, y, h, Arr<7>{a51, a52, a53, a54}, k, 4);
        rhs(tmp, k[4]);
        axpy(tmp, y, h, Arr<7>{a61, a62, a63, a64, a65}, k, 5);
        rhs(tmp, k[5]);
        axpy(y5, y, h, Arr<7>{b1, 0.0, b3, b4, b5, b6}, k, 6);
        rhs(y5, k[6]);

        // Per-component scale with a system-size floor, so components that
        // cross zero (e.g. Im A at a breather turning point) do not stall
        // the step control.
        double ymax = 0.0;
        for (std::size_t i = 0; i < N; ++i)
            ymax = std::max({ymax, std::abs(y[i]), std::abs(y5[i])});
        double err = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double e = h * (e1 * k[0][i] + e3 * k[2][i] + e4 * k[3][i] + e5 * k[4][i] +
                                  e6 * k[5][i] + e7 * k[6][i]);
            const double sc =
                abs_tol + rel_tol * (std::max(std::abs(y[i]), std::abs(y5[i])) + 1e-3 * ymax);
            if (sc > 0.0) err = std::max(err, std::abs(e) / sc);
        }
        bool ok = err <= 1.0 && accept(y5);
        for (std::size_t i = 0; i < N && ok; ++i)
            if (!std::isfinite(y5[i])) ok = false;
        if (!std::isfinite(err)) {
            err = 4.0;
            ok = false;
        }
        if (ok) {
            t = last ? span : t + h;
            y = y5;
            k[0] = k[6]; // FSAL
            const double grow = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
            h *= std::clamp(grow, 0.2, 5.0);
        } else {
            h *= std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.5);
        }
        if (max_step > 0.0) h = std::min(h, max_step);
        if (!(h > span * 1e-15) || ++iter > max_iter)
            throw NumericError("integrate_span: step size underflow", t * time_scale);
    }
    return y;
}

struct ScaledSpring {
    bool gravity = false;
    double g = 0.0; // G M^3 R / hbar^2
    double amplification = 1.0;

    double operator()(double re_a) const {
        const double r2 = 0.75 / re_a;
        const double d = std::sqrt(r2);
        if (d <= 2.0)
            return amplification * g * (1.0 - 0.5625 * d + 0.03125 * d * d * d);
        return g / (r2 * d);
    }
};

struct ScaledParams {
    ScaledSpring spring;
    double lambda = 0.0;    // Lambda M R^4 / hbar
    double time_unit = 0.0; // M R^2 / hbar, seconds per scaled time
    double len2 = 0.0;      // R^2
};

ScaledParams make_scaled(const EvolutionMode& mode, const NanosphereSpec& sphere) {
    const auto& k = constants();
    const double R = sphere.radius;
    const double M = sphere.mass();
    ScaledParams p;
    p.spring.gravity = mode.gravity;
    p.spring.amplification = mode.amplification;
    p.spring.g = k.G * M * M * M * R / (k.hbar * k.hbar);
    p.len2 = R * R;
    p.time_unit = M * R * R / k.hbar;
    p.lambda = mode.qmupl_lambda * M * R * R * R * R / k.hbar;
    return p;
}

cplx evolve_a_scaled(cplx a0, double tau, const ScaledParams& p, const IntegratorConfig& cfg) {
    auto rhs = [&p](const Arr<2>& y, Arr<2>& dy) {
        const cplx a(y[0], y[1]);
        cplx d = cplx(0.0, -2.0) * a * a;
        if (p.spring.gravity && y[0] > 0.0) d += cplx(0.0, 0.5 * p.spring(y[0]));
        d += p.lambda;
        dy[0] = d.real();
        dy[1] = d.imag();
    };
    auto accept = [](const Arr<2>& y) { return y[0] > 0.0; };
    const double abs_scaled = cfg.abs_tol * p.len2;
    const double max_step = cfg.max_step > 0.0 ? cfg.max_step / p.time_unit : 0.0;
    Arr<2> y{a0.real(), a0.imag()};
    y = integrate_span(y, tau, rhs, accept, cfg.rel_tol, abs_scaled, max_step, p.time_unit);
    return {y[0], y[1]};
}

cplx free_a_closed(cplx a0, double t, double mass) {
    const cplx denom = 1.0 + cplx(0.0, 2.0) * constants().hbar * a0 * t / mass;
    return a0 / denom;
}

GaussianState rebuild(cplx a, const Vec3& mu, const Vec3& v, const NanosphereSpec& sphere,
                      cplx c_prev) {
    GaussianState out;
    out.A = a;
    const double bv = sphere.mass() / constants().hbar;
    for (int i = 0; i < 3; ++i)
        out.B[i] = 2.0 * a * mu[i] + cplx(0.0, bv * v[i]);
    out.C = c_prev;
    out.check();
    return normalized(out);
}

cplx evolve_a_impl(cplx a0, double duration, const EvolutionMode& mode,
                   const NanosphereSpec& sphere, const IntegratorConfig& config, bool force_rk) {
    if (!(duration >= 0.0)) throw std::domain_error("evolve: duration must be non-negative");
    if (duration == 0.0) return a0;
    if (!force_rk && !mode.gravity && mode.qmupl_lambda == 0.0)
        return free_a_closed(a0, duration, sphere.mass());
    const ScaledParams p = make_scaled(mode, sphere);
    return evolve_a_scaled(a0 * p.len2, duration / p.time_unit, p, config) / p.len2;
}

GaussianState evolve_impl(const GaussianState& state, double duration, const EvolutionMode& mode,
                          const NanosphereSpec& sphere, const IntegratorConfig& config,
                          bool force_rk) {
    state.check();
    if (!(duration >= 0.0)) throw std::domain_error("evolve: duration must be non-negative");
    if (duration == 0.0) return state;
    const Vec3 mu = centre(state);
    const Vec3 v = mean_velocity(state, sphere);
    const cplx a = evolve_a_impl(state.A, duration, mode, sphere, config, force_rk);
    return rebuild(a, mu + v * duration, v, sphere, state.C);
}

} // namespace

cplx evolve_a(cplx A, double duration, const EvolutionMode& mode, const NanosphereSpec& sphere,
              const IntegratorConfig& config) {
    if (!(A.real() > 0.0)) throw std::domain_error("evolve_a: Re(A) must be positive");
    return evolve_a_impl(A, duration, mode, sphere, config, false);
}

StateDerivative derivative(const GaussianState& state, const EvolutionMode& mode,
                           const NanosphereSpec& sphere) {
    state.check();
    const auto& k = constants();
    const double M = sphere.mass();
    const cplx i_unit(0.0, 1.0);
    StateDerivative d;
    d.dA = -2.0 * i_unit * k.hbar * state.A * state.A / M;
    if (mode.gravity) {
        const SpringModel spring(sphere, mode.amplification);
        d.dA += i_unit * spring_k(3.0 / (4.0 * state.A.real()), spring) / (2.0 * k.hbar);
    }
    d.dA += mode.qmupl_lambda;
    for (int i = 0; i < 3; ++i)
        d.dB[i] = -2.0 * i_unit * k.hbar * state.A * state.B[i] / M;
    d.dC = i_unit * k.hbar * (state.B.dot_self() - 6.0 * state.A) / (2.0 * M);
    return d;
}

GaussianState evolve(const GaussianState& state, double duration, const EvolutionMode& mode,
                     const NanosphereSpec& sphere, const IntegratorConfig& config) {
    return evolve_impl(state, duration, mode, sphere, config, false);
}

GaussianState evolve_rk(const GaussianState& state, double duration, const EvolutionMode& mode,
                        const NanosphereSpec& sphere, const IntegratorConfig& config) {
    return evolve_impl(state, duration, mode, sphere, config, true);
}

GaussianState evolve_components(const GaussianState& state, double duration,
                                const EvolutionMode& mode, const NanosphereSpec& sphere,
                                const IntegratorConfig& config) {
    state.check();
    if (!(duration >= 0.0)) throw std::domain_error("evolve_components: negative duration");
    if (duration == 0.0) return state;
    const ScaledParams p = make_scaled(mode, sphere);
    const double R = sphere.radius;
    // Scaled components: A R^2, B R, C.
    Arr<10> y{state.A.real() * p.len2, state.A.imag() * p.len2,
              state.B.x.real() * R,    state.B.x.imag() * R,
              state.B.y.real() * R,    state.B.y.imag() * R,
              state.B.z.real() * R,    state.B.z.imag() * R,
              state.C.real(),          state.C.imag()};
    auto rhs = [&p](const Arr<10>& s, Arr<10>& ds) {
        const cplx a(s[0], s[1]);
        const cplx bx(s[2], s[3]), by(s[4], s[5]), bz(s[6], s[7]);
        cplx da = cplx(0.0, -2.0) * a * a;
        if (p.spring.gravity && s[0] > 0.0) da += cplx(0.0, 0.5 * p.spring(s[0]));
        da += p.lambda;
        const cplx dbx = cplx(0.0, -2.0) * a * bx;
        const cplx dby = cplx(0.0, -2.0) * a * by;
        const cplx dbz = cplx(0.0, -2.0) * a * bz;
        const cplx dc = cplx(0.0, 0.5) * (bx * bx + by * by + bz * bz - 6.0 * a);
        ds = {da.real(),  da.imag(),  dbx.real(), dbx.imag(), dby.real(),
              dby.imag(), dbz.real(), dbz.imag(), dc.real(),  dc.imag()};
    };
    auto accept = [](const Arr<10>& s) { return s[0] > 0.0; };
    const double max_step = config.max_step > 0.0 ? config.max_step / p.time_unit : 0.0;
    y = integrate_span(y, duration / p.time_unit, rhs, accept, config.rel_tol,
                       config.abs_tol * p.len2, max_step, p.time_unit);
    GaussianState out;
    out.A = cplx(y[0], y[1]) / p.len2;
    out.B.x = cplx(y[2], y[3]) / R;
    out.B.y = cplx(y[4], y[5]) / R;
    out.B.z = cplx(y[6], y[7]) / R;
    out.C = cplx(y[8], y[9]);
    out.valid_norm = state.valid_norm;
    out.check();
    return out;
}

GaussianState free_closed_form(const GaussianState& state, double t, const NanosphereSpec& sphere) {
    state.check();
    if (!(t >= 0.0)) throw std::domain_error("free_closed_form: negative time");
    const double M = sphere.mass();
    const cplx denom = 1.0 + cplx(0.0, 2.0) * constants().hbar * state.A * t / M;
    GaussianState out;
    out.A = state.A / denom;
    for (int i = 0; i < 3; ++i) out.B[i] = state.B[i] / denom;
    out.C = state.C + state.B.dot_self() / (4.0 * state.A) * (1.0 - 1.0 / denom) -
            1.5 * std::log(denom);
    out.valid_norm = state.valid_norm;
    out.check();
    return out;
}

double qmupl_equilibrium_check(const EvolutionMode& mode, const NanosphereSpec& sphere) {
    if (!mode.gravity || !(mode.qmupl_lambda > 0.0))
        throw std::domain_error("qmupl_equilibrium_check: needs gravity on and Lambda > 0");
    const SpringModel model(sphere, mode.amplification);
    const BoundState bs = bound_state(model);
    const double crit = spring_k(bs.spread * bs.spread, model) / (2.0 * constants().hbar);
    return std::abs(mode.qmupl_lambda - crit) / mode.qmupl_lambda;
}

} // namespace nanofall
