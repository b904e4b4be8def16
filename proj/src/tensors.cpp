#include "monodromy/tensors.hpp"

#include <array>
#include <cmath>

namespace monodromy {

Mat TwoTensor::contract_first(const LieContext& ctx, const Mat& y) const {
  // (y (x) id)(T) = sum_{a,b} m(a,b) <y, e_a> e_b.
  Vec w = Vec::Zero(ctx.dim());
  for (int a = 0; a < ctx.dim(); ++a) {
    auto [i, j] = ctx.unidx(a);
    cplx ya = y(j, i);  // <y, e_ij> = tr(y e_ij) = y_ji
    if (ya != cplx{0, 0}) w += ya * m.row(a).transpose();
  }
  return ctx.unflatten(w);
}

TwoTensor casimir(const LieContext& ctx) {
  TwoTensor t(ctx.n());
  for (int i = 0; i < ctx.n(); ++i)
    for (int j = 0; j < ctx.n(); ++j) t.m(ctx.idx(i, j), ctx.idx(j, i)) += 1.0;
  return t;
}

TwoTensor standard_r(const LieContext& ctx) {
  TwoTensor r = casimir(ctx) * 0.5;
  for (auto [i, j] : ctx.ordering().positive_roots()) {
    int a = ctx.idx(i, j), b = ctx.idx(j, i);  // E_alpha = e_ij, E_-alpha = e_ji
    r.m(a, b) += 0.5;
    r.m(b, a) -= 0.5;
  }
  return r;
}

TwoTensor skew_part(const TwoTensor& r) {
  TwoTensor t(r.n);
  t.m = 0.5 * (r.m - r.m.transpose());
  return t;
}

TwoTensor wedge(const LieContext& ctx, const Mat& X, const Mat& Y) {
  Vec x = ctx.flatten(X), y = ctx.flatten(Y);
  TwoTensor t(ctx.n());
  t.m = x * y.transpose() - y * x.transpose();
  return t;
}

double ThreeTensor::norm_inf() const {
  double mx = 0;
  for (const auto& z : v) mx = std::max(mx, std::abs(z));
  return mx;
}

ThreeTensor ThreeTensor::operator+(const ThreeTensor& o) const {
  ThreeTensor t(n);
  for (size_t k = 0; k < v.size(); ++k) t.v[k] = v[k] + o.v[k];
  return t;
}

ThreeTensor ThreeTensor::operator-(const ThreeTensor& o) const {
  ThreeTensor t(n);
  for (size_t k = 0; k < v.size(); ++k) t.v[k] = v[k] - o.v[k];
  return t;
}

ThreeTensor ThreeTensor::operator*(cplx s) const {
  ThreeTensor t(n);
  for (size_t k = 0; k < v.size(); ++k) t.v[k] = s * v[k];
  return t;
}

ThreeTensor ThreeTensor::alt() const {
  ThreeTensor t(n);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c) {
        cplx s = at(a, b, c) - at(a, c, b) - at(b, a, c) + at(b, c, a) + at(c, a, b) - at(c, b, a);
        t.at(a, b, c) = s;
      }
  return t;
}

namespace {

// Bracket of elementary matrices: [e_ij, e_kl] = delta_jk e_il - delta_li e_kj,
// returned as up to two (index, coefficient) pairs.
struct BracketTerms {
  std::array<int, 2> idx{-1, -1};
  std::array<double, 2> coef{0, 0};
  int count = 0;
};

BracketTerms elem_bracket(const LieContext& ctx, int a, int b) {
  auto [i, j] = ctx.unidx(a);
  auto [k, l] = ctx.unidx(b);
  BracketTerms t;
  if (j == k) { t.idx[t.count] = ctx.idx(i, l); t.coef[t.count] = 1.0; ++t.count; }
  if (l == i) { t.idx[t.count] = ctx.idx(k, j); t.coef[t.count] = -1.0; ++t.count; }
  return t;
}

}  // namespace

ThreeTensor bracket_12_13(const LieContext& ctx, const TwoTensor& T, const TwoTensor& S) {
  // sum T_ab S_cd [e_a, e_c] (x) e_b (x) e_d
  ThreeTensor out(ctx.n());
  int d = ctx.dim();
  for (int a = 0; a < d; ++a)
    for (int c = 0; c < d; ++c) {
      BracketTerms br = elem_bracket(ctx, a, c);
      if (br.count == 0) continue;
      for (int b = 0; b < d; ++b) {
        cplx Tab = T.m(a, b);
        if (Tab == cplx{0, 0}) continue;
        for (int dd = 0; dd < d; ++dd) {
          cplx w = Tab * S.m(c, dd);
          if (w == cplx{0, 0}) continue;
          for (int k = 0; k < br.count; ++k) out.at(br.idx[k], b, dd) += br.coef[k] * w;
        }
      }
    }
  return out;
}

ThreeTensor bracket_12_23(const LieContext& ctx, const TwoTensor& T, const TwoTensor& S) {
  // sum T_ab S_cd e_a (x) [e_b, e_c] (x) e_d
  ThreeTensor out(ctx.n());
  int d = ctx.dim();
  for (int b = 0; b < d; ++b)
    for (int c = 0; c < d; ++c) {
      BracketTerms br = elem_bracket(ctx, b, c);
      if (br.count == 0) continue;
      for (int a = 0; a < d; ++a) {
        cplx Tab = T.m(a, b);
        if (Tab == cplx{0, 0}) continue;
        for (int dd = 0; dd < d; ++dd) {
          cplx w = Tab * S.m(c, dd);
          if (w == cplx{0, 0}) continue;
          for (int k = 0; k < br.count; ++k) out.at(a, br.idx[k], dd) += br.coef[k] * w;
        }
      }
    }
  return out;
}

ThreeTensor bracket_13_23(const LieContext& ctx, const TwoTensor& T, const TwoTensor& S) {
  // sum T_ab S_cd e_a (x) e_c (x) [e_b, e_d]
  ThreeTensor out(ctx.n());
  int d = ctx.dim();
  for (int b = 0; b < d; ++b)
    for (int dd = 0; dd < d; ++dd) {
      BracketTerms br = elem_bracket(ctx, b, dd);
      if (br.count == 0) continue;
      for (int a = 0; a < d; ++a) {
        cplx Tab = T.m(a, b);
        if (Tab == cplx{0, 0}) continue;
        for (int c = 0; c < d; ++c) {
          cplx w = Tab * S.m(c, dd);
          if (w == cplx{0, 0}) continue;
          for (int k = 0; k < br.count; ++k) out.at(a, c, br.idx[k]) += br.coef[k] * w;
        }
      }
    }
  return out;
}

ThreeTensor cybe_lhs(const LieContext& ctx, const TwoTensor& r) {
  return bracket_12_13(ctx, r, r) + bracket_12_23(ctx, r, r) + bracket_13_23(ctx, r, r);
}

void add_slotted(ThreeTensor& out, int slot, int a, const TwoTensor& T, cplx scale) {
  int d = out.d;
  for (int b = 0; b < d; ++b)
    for (int c = 0; c < d; ++c) {
      cplx w = scale * T.m(b, c);
      if (w == cplx{0, 0}) continue;
      switch (slot) {
        case 0: out.at(a, b, c) += w; break;
        case 1: out.at(b, a, c) += w; break;
        default: out.at(b, c, a) += w; break;
      }
    }
}

}  // namespace monodromy
