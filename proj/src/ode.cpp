#include "monodromy/ode.hpp"

#include <boost/numeric/odeint.hpp>
#include <cmath>

#include "monodromy/errors.hpp"

namespace monodromy {

cplx PathSegment::z(double s) const {
  double r = r0 + s * (r1 - r0);
  double th = th0 + s * (th1 - th0);
  return r * std::exp(cplx(0.0, th));
}

cplx PathSegment::dz(double s) const {
  double r = r0 + s * (r1 - r0);
  double th = th0 + s * (th1 - th0);
  cplx e = std::exp(cplx(0.0, th));
  return (r1 - r0) * e + r * cplx(0.0, th1 - th0) * e;
}

namespace {

namespace odeint = boost::numeric::odeint;
// Real state: interleaved (re, im) pairs of the matrix entries.
using State = std::vector<double>;

}  // namespace

Mat integrate_path(const OdeRhs& rhs, Mat Y0,
                   const std::vector<PathSegment>& path, const OdeOptions& opt) {
  const int rows = static_cast<int>(Y0.rows());
  const int cols = static_cast<int>(Y0.cols());
  const int m = rows * cols;

  for (const PathSegment& seg : path) {
    auto system = [&](const State& y, State& dydt, double s) {
      Mat Y = Eigen::Map<const Mat>(reinterpret_cast<const cplx*>(y.data()),
                                    rows, cols);
      Mat D = rhs(seg.z(s), Y) * seg.dz(s);
      dydt.resize(2 * m);
      Eigen::Map<Mat>(reinterpret_cast<cplx*>(dydt.data()), rows, cols) = D;
    };
    State y(2 * m);
    Eigen::Map<Mat>(reinterpret_cast<cplx*>(y.data()), rows, cols) = Y0;
    auto stepper = odeint::make_controlled<
        odeint::runge_kutta_fehlberg78<State>>(opt.atol, opt.rtol);
    try {
      odeint::integrate_adaptive(stepper, system, y, 0.0, 1.0, opt.initial_step);
    } catch (const std::exception& e) {
      throw IntegratorFailure(std::string("integrate_path: ") + e.what());
    }
    Y0 = Eigen::Map<const Mat>(reinterpret_cast<const cplx*>(y.data()), rows,
                               cols);
  }
  return Y0;
}

}  // namespace monodromy
