#include "monodromy/verifiers.hpp"

namespace monodromy {

namespace {

void check_step(double h) {
  if (!(h > 0.0) || h > 0.25)
    throw FDStepTooLarge("finite-difference step outside (0, 0.25]");
}

Mat richardson_mat(const std::function<Mat(double)>& central, double h) {
  Mat d1 = central(h), d2 = central(h / 2.0);
  return (4.0 * d2 - d1) / 3.0;
}

}  // namespace

double jacobi_residual(const TensorField& field, const Vec& point, double h) {
  check_step(h);
  const int d = field.dim;
  Mat P = field.eval(point);
  std::vector<Mat> dP(d);
  for (int l = 0; l < d; ++l) {
    auto central = [&](double s) {
      Vec p = point, q = point;
      p(l) += s;
      q(l) -= s;
      return Mat((field.eval(p) - field.eval(q)) / (2.0 * s));
    };
    dP[l] = richardson_mat(central, h);
  }
  double worst = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      for (int k = j + 1; k < d; ++k) {
        cplx s{0, 0};
        for (int l = 0; l < d; ++l)
          s += P(i, l) * dP[l](j, k) + P(j, l) * dP[l](k, i) +
               P(k, l) * dP[l](i, j);
        worst = std::max(worst, std::abs(s));
      }
  return worst;
}

Mat chart_jacobian(const ChartMap& f, const Vec& point, double h) {
  check_step(h);
  Mat J(f.dst_dim, f.src_dim);
  for (int b = 0; b < f.src_dim; ++b) {
    auto central = [&](double s) {
      Vec p = point, q = point;
      p(b) += s;
      q(b) -= s;
      return Mat((f.eval(p) - f.eval(q)) / (2.0 * s));
    };
    J.col(b) = richardson_mat(central, h);
  }
  return J;
}

double poisson_map_residual(const ChartMap& f, const TensorField& src,
                            const TensorField& dst, const Vec& point, double h) {
  Mat J = chart_jacobian(f, point, h);
  Mat pushed = J * src.eval(point) * J.transpose();
  Mat target = dst.eval(f.eval(point));
  return (pushed - target).cwiseAbs().maxCoeff();
}

ChartMap f_map_chart(const LieContext& ctx, const GValuedMap& g) {
  const LieContext* c = &ctx;
  ChartMap f;
  f.name = "F_g";
  f.src_dim = f.dst_dim = ctx.dim() + ctx.n();
  f.eval = [c, g](const Vec& p) {
    Mat h, lam;
    unpack_torus_pair(*c, p, h, lam);
    Mat x = h * lam * h.partialPivLu().inverse();
    return pack_torus_pair(*c, Mat(g.eval(Mat(kTwoPiI * x)) * h),
                           Mat(kTwoPiI * lam));
  };
  return f;
}

double pushforward_residual(const LieContext& ctx, const GValuedMap& g,
                            const Mat& h, const Mat& lambda, double fd_step,
                            cplx kappa) {
  ChartMap f = f_map_chart(ctx, g);
  Vec p = pack_torus_pair(ctx, h, lambda);
  Mat J = chart_jacobian(f, p, fd_step);
  Mat pushed = J * pi_sigma_tensor(ctx, h, lambda) * J.transpose();
  Vec q = f.eval(p);
  Mat h2, lam2;
  unpack_torus_pair(ctx, q, h2, lam2);
  Mat target = kappa * pi_r_tensor(ctx, h2, lam2);
  return (pushed - target).cwiseAbs().maxCoeff();
}

}  // namespace monodromy
