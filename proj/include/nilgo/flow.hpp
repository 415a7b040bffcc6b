#ifndef NILGO_FLOW_HPP
#define NILGO_FLOW_HPP

#include <cmath>
#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "nilgo/algebra.hpp"
#include "nilgo/matrix.hpp"

namespace nilgo {

struct ClassTooHigh : std::runtime_error {
  ClassTooHigh() : std::runtime_error("operation requires a 2-step (or abelian) group") {}
};

struct ToleranceExceeded : std::runtime_error {
  double max_deviation, worst_t;
  ToleranceExceeded(double dev, double t)
      : std::runtime_error("orbit/geodesic deviation " + std::to_string(dev) +
                           " exceeds tolerance at t = " + std::to_string(t)),
        max_deviation(dev),
        worst_t(t) {}
};

inline void require_two_step(const MetricNilAlgebra& alg) {
  auto cls = alg.nilpotency_class();
  if (!cls || *cls > 2) throw ClassTooHigh{};
}

/// Christoffel symbols of the left-invariant connection in the invariant
/// frame, ∇_{e_i} e_j = Σ_k Γ^k_{ij} e_k, from the Koszul formula
/// 2<∇_i e_j, e_k> = <[e_i,e_j],e_k> − <[e_j,e_k],e_i> + <[e_k,e_i],e_j>.
/// Exact rationals, consumed as floats by the integrators.
class ConnectionTable {
public:
  explicit ConnectionTable(const MetricNilAlgebra& alg) : n_(alg.dim()), g_(n_ * n_ * n_) {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) {
        RatVec ei = alg.basis_vector(i), ej = alg.basis_vector(j);
        RatVec rhs(n_);
        for (std::size_t a = 0; a < n_; ++a) {
          RatVec ea = alg.basis_vector(a);
          rhs[a] = Rational(1, 2) * (alg.inner(alg.bracket(ei, ej), ea) -
                                     alg.inner(alg.bracket(ej, ea), ei) +
                                     alg.inner(alg.bracket(ea, ei), ej));
        }
        SolutionSet s = solve_affine(alg.metric().transpose(), rhs);
        if (s.kind != SolutionKind::Unique)
          throw std::logic_error("ConnectionTable: metric is singular");
        for (std::size_t k = 0; k < n_; ++k) g_[(i * n_ + j) * n_ + k] = s.particular[k];
      }
  }

  std::size_t dim() const { return n_; }
  const Rational& gamma(std::size_t i, std::size_t j, std::size_t k) const {
    return g_[(i * n_ + j) * n_ + k];
  }

  /// (∇_Y Y)^k = Σ Γ^k_{ij} y^i y^j, exact.
  RatVec covariant_self(const RatVec& y) const {
    RatVec out(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      if (y[i].is_zero()) continue;
      for (std::size_t j = 0; j < n_; ++j) {
        if (y[j].is_zero()) continue;
        for (std::size_t k = 0; k < n_; ++k)
          if (!gamma(i, j, k).is_zero()) out[k] += gamma(i, j, k) * y[i] * y[j];
      }
    }
    return out;
  }

private:
  std::size_t n_;
  std::vector<Rational> g_;
};

/// 2-step exponential-coordinate product p·q = p + q + ½[p,q], exact.
inline RatVec group_product(const MetricNilAlgebra& alg, const RatVec& p, const RatVec& q) {
  require_two_step(alg);
  return p + q + Rational(1, 2) * alg.bracket(p, q);
}

/// Killing field of the one-parameter group generated by D + Y:
/// X*(p) = Y + D(p) + ½[Y, p], exact.
inline RatVec killing_field(const MetricNilAlgebra& alg, const RatMatrix& d, const RatVec& y,
                            const RatVec& p) {
  require_two_step(alg);
  return y + d.apply(p) + Rational(1, 2) * alg.bracket(y, p);
}

using DVec = std::vector<double>;

struct Trajectory {
  std::vector<double> times;
  std::vector<DVec> points;
  std::vector<DVec> body_velocity;
  double step = 0;
};

/// Float mirror of the algebra data used inside the fixed-step integrators.
class FloatAlgebra {
public:
  explicit FloatAlgebra(const MetricNilAlgebra& alg)
      : n_(alg.dim()), c_(n_ * n_ * n_), g_(n_ * n_) {
    require_two_step(alg);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) {
        for (std::size_t k = 0; k < n_; ++k) c_[(i * n_ + j) * n_ + k] = alg.c(i, j, k).to_double();
        g_[i * n_ + j] = alg.metric()(i, j).to_double();
      }
    ConnectionTable ct(alg);
    gamma_.resize(n_ * n_ * n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        for (std::size_t k = 0; k < n_; ++k)
          gamma_[(i * n_ + j) * n_ + k] = ct.gamma(i, j, k).to_double();
  }

  std::size_t dim() const { return n_; }

  DVec bracket(const DVec& x, const DVec& y) const {
    DVec out(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) {
        const double f = x[i] * y[j];
        if (f == 0.0) continue;
        for (std::size_t k = 0; k < n_; ++k) out[k] += c_[(i * n_ + j) * n_ + k] * f;
      }
    return out;
  }

  DVec gamma_quad(const DVec& v) const {
    DVec out(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) {
        const double f = v[i] * v[j];
        if (f == 0.0) continue;
        for (std::size_t k = 0; k < n_; ++k) out[k] += gamma_[(i * n_ + j) * n_ + k] * f;
      }
    return out;
  }

  double inner(const DVec& x, const DVec& y) const {
    double s = 0;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) s += x[i] * g_[i * n_ + j] * y[j];
    return s;
  }

private:
  std::size_t n_;
  std::vector<double> c_, g_, gamma_;
};

namespace detail {

inline DVec axpy(const DVec& a, double s, const DVec& b) {
  DVec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + s * b[i];
  return c;
}

/// Classical RK4 with fixed step on a time-dependent field. `state` is
/// (x | v) or just x, handled by the callable.
template <class F>
Trajectory rk4(F&& field, DVec state, std::size_t half, double T, double dt) {
  Trajectory tr;
  tr.step = dt;
  const auto steps = static_cast<std::size_t>(std::llround(T / dt));
  tr.times.reserve(steps + 1);
  tr.points.reserve(steps + 1);
  auto record = [&](double t, const DVec& s) {
    tr.times.push_back(t);
    tr.points.emplace_back(s.begin(), s.begin() + half);
    if (s.size() > half) tr.body_velocity.emplace_back(s.begin() + half, s.end());
  };
  record(0.0, state);
  for (std::size_t i = 0; i < steps; ++i) {
    const double t = i * dt;
    DVec k1 = field(t, state);
    DVec k2 = field(t + dt / 2, axpy(state, dt / 2, k1));
    DVec k3 = field(t + dt / 2, axpy(state, dt / 2, k2));
    DVec k4 = field(t + dt, axpy(state, dt, k3));
    for (std::size_t j = 0; j < state.size(); ++j)
      state[j] += dt / 6 * (k1[j] + 2 * k2[j] + 2 * k3[j] + k4[j]);
    record((i + 1) * dt, state);
  }
  return tr;
}

}  // namespace detail

/// Geodesic from the identity in body coordinates:
/// v̇ = −Γ(v,v), ẋ = v + ½[x,v]. Optional time rescaling ṡ(t) multiplies the
/// field, so the trajectory is γ(s(t)) on the uniform t-grid.
template <class SDot>
Trajectory integrate_geodesic_rescaled(const FloatAlgebra& fa, const DVec& v0, double T, double dt,
                                       SDot&& sdot) {
  const std::size_t n = fa.dim();
  DVec state(2 * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) state[n + i] = v0[i];
  auto field = [&](double t, const DVec& s) {
    DVec x(s.begin(), s.begin() + n), v(s.begin() + n, s.end());
    DVec dx = detail::axpy(v, 0.5, fa.bracket(x, v));
    DVec dv = fa.gamma_quad(v);
    const double r = sdot(t);
    DVec out(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      out[i] = r * dx[i];
      out[n + i] = -r * dv[i];
    }
    return out;
  };
  return detail::rk4(field, std::move(state), n, T, dt);
}

inline Trajectory integrate_geodesic(const FloatAlgebra& fa, const DVec& v0, double T, double dt) {
  return integrate_geodesic_rescaled(fa, v0, T, dt, [](double) { return 1.0; });
}

inline Trajectory integrate_geodesic(const MetricNilAlgebra& alg, const DVec& v0, double T,
                                     double dt) {
  return integrate_geodesic(FloatAlgebra(alg), v0, T, dt);
}

/// Orbit of the one-parameter isometry group: α̇ = Y + D α + ½[Y, α], α(0) = e.
inline Trajectory integrate_orbit(const FloatAlgebra& fa, const std::vector<DVec>& d_cols,
                                  const DVec& y, double T, double dt) {
  const std::size_t n = fa.dim();
  auto field = [&](double, const DVec& p) {
    DVec out = detail::axpy(y, 0.5, fa.bracket(y, p));
    for (std::size_t j = 0; j < n; ++j)
      if (p[j] != 0.0)
        for (std::size_t i = 0; i < n; ++i) out[i] += d_cols[j][i] * p[j];
    return out;
  };
  return detail::rk4(field, DVec(n, 0.0), n, T, dt);
}

inline std::vector<DVec> to_float_columns(const RatMatrix& m) {
  std::vector<DVec> cols(m.cols(), DVec(m.rows()));
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i) cols[j][i] = m(i, j).to_double();
  return cols;
}

inline Trajectory integrate_orbit(const MetricNilAlgebra& alg, const RatMatrix& d, const RatVec& y,
                                  double T, double dt) {
  DVec yf(alg.dim());
  for (std::size_t i = 0; i < alg.dim(); ++i) yf[i] = y[i].to_double();
  return integrate_orbit(FloatAlgebra(alg), to_float_columns(d), yf, T, dt);
}

struct CompareReport {
  double max_deviation = 0;
  double worst_t = 0;
  double tolerance = 0;
  bool ok() const { return max_deviation < tolerance; }
};

/// Pointwise comparison of the isometry orbit of D + Y with the geodesic of
/// initial velocity Y. For k ≠ 0 the geodesic runs in the reparametrized
/// time s(t) = (1 − e^{−kt})/k, normalized so s(0) = 0 and s'(0) = 1.
inline CompareReport compare_orbit_geodesic(const MetricNilAlgebra& alg, const RatMatrix& d,
                                            const RatVec& y, const Rational& k, double T,
                                            double dt, double tol,
                                            bool throw_on_exceed = false) {
  FloatAlgebra fa(alg);
  DVec yf(alg.dim());
  for (std::size_t i = 0; i < alg.dim(); ++i) yf[i] = y[i].to_double();
  const double kf = k.to_double();
  Trajectory orbit = integrate_orbit(fa, to_float_columns(d), yf, T, dt);
  Trajectory geo = integrate_geodesic_rescaled(fa, yf, T, dt,
                                               [kf](double t) { return std::exp(-kf * t); });
  CompareReport rep;
  rep.tolerance = tol;
  for (std::size_t i = 0; i < orbit.times.size(); ++i) {
    double dev = 0;
    for (std::size_t j = 0; j < alg.dim(); ++j)
      dev = std::max(dev, std::abs(orbit.points[i][j] - geo.points[i][j]));
    if (dev > rep.max_deviation) {
      rep.max_deviation = dev;
      rep.worst_t = orbit.times[i];
    }
  }
  if (throw_on_exceed && !rep.ok()) throw ToleranceExceeded(rep.max_deviation, rep.worst_t);
  return rep;
}

/// CSV export: t, x1..xn, v1..vn (velocities omitted when absent).
inline std::string to_csv(const Trajectory& tr, std::size_t dim) {
  std::ostringstream os;
  os.precision(17);
  os << "t";
  for (std::size_t i = 1; i <= dim; ++i) os << ",x" << i;
  if (!tr.body_velocity.empty())
    for (std::size_t i = 1; i <= dim; ++i) os << ",v" << i;
  os << "\n";
  for (std::size_t r = 0; r < tr.times.size(); ++r) {
    os << tr.times[r];
    for (double x : tr.points[r]) os << "," << x;
    if (!tr.body_velocity.empty())
      for (double v : tr.body_velocity[r]) os << "," << v;
    os << "\n";
  }
  return os.str();
}

}  // namespace nilgo

#endif
