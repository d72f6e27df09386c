#pragma once

#include <cmath>
#include <vector>

#include "gridmaint/pboracle.hpp"

namespace oracle {

// P(X <= k) by enumerating all 2^n outcomes.
inline double brute_pb_cdf(const std::vector<double>& p, int k) {
  const int n = static_cast<int>(p.size());
  long double total = 0.0L;
  for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
    long double pr = 1.0L;
    int c = 0;
    for (int i = 0; i < n; ++i) {
      if (mask >> i & 1ul) {
        pr *= p[i];
        ++c;
      } else {
        pr *= 1.0L - p[i];
      }
    }
    if (c <= k) total += pr;
  }
  return static_cast<double>(total);
}

// Joint probability straight from the table: H' at its period, everything else at |T|.
inline double brute_joint(const gridmaint::SuccessProbTable& tab, const gridmaint::Schedule& v, int rho_g,
                          int rho_l) {
  std::vector<double> pg, pl;
  std::vector<int> period(tab.kind.size(), tab.horizon);
  for (size_t i = 0; i < tab.maintainable.size(); ++i)
    period[tab.maintainable[i]] = std::min(v.period[i], tab.horizon);
  for (size_t h = 0; h < tab.kind.size(); ++h)
    (tab.kind[h] == gridmaint::ComponentKind::Generator ? pg : pl).push_back(tab.q[h][period[h] - 1]);
  return brute_pb_cdf(pg, rho_g) * brute_pb_cdf(pl, rho_l);
}

inline long double normal_cdf(long double x) { return 0.5L * std::erfc(-x / std::sqrt(2.0L)); }

// Inverse-Gaussian CDF from its closed form.
inline double ig_cdf_ref(double x, double mu, double lambda) {
  if (x <= 0) return 0.0;
  const long double a = std::sqrt(static_cast<long double>(lambda) / x);
  const long double r = normal_cdf(a * (x / mu - 1.0L)) +
                        std::exp(2.0L * lambda / mu) * normal_cdf(-a * (x / mu + 1.0L));
  return static_cast<double>(std::min(1.0L, r));
}

inline long double bisect(const auto& f, long double target, long double lo, long double hi) {
  for (int i = 0; i < 200; ++i) {
    const long double mid = 0.5L * (lo + hi);
    (f(mid) < target ? lo : hi) = mid;
  }
  return 0.5L * (lo + hi);
}

inline long double normal_quantile(long double p) { return bisect(normal_cdf, p, -40.0L, 40.0L); }

// Student-t CDF by composite Simpson integration of the density from 0.
inline long double student_cdf(long double x, int df) {
  const long double nu = df;
  const long double c = std::exp(std::lgamma((nu + 1) / 2) - std::lgamma(nu / 2)) / std::sqrt(nu * M_PI);
  auto pdf = [&](long double t) { return c * std::pow(1 + t * t / nu, -(nu + 1) / 2); };
  const int n = 20000;
  const long double h = x / n;
  long double s = pdf(0) + pdf(x);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4 : 2) * pdf(i * h);
  return 0.5L + s * h / 3;
}

inline long double student_quantile(long double p, int df) {
  return bisect([&](long double t) { return student_cdf(t, df); }, p, 0.0L, 100.0L);
}

struct SaaRef {
  double mu_u, sigma_u, ub_lo, ub_hi, mu_l, sigma_l, lb_lo, lb_hi, gap;
};

inline SaaRef saa_reference(const std::vector<double>& z, const std::vector<double>& obj, double alpha) {
  const long double M = z.size(), Np = obj.size();
  long double su = 0, sl = 0;
  for (double x : obj) su += x;
  for (double x : z) sl += x;
  const long double mu_u = su / Np, mu_l = sl / M;
  long double vu = 0, vl = 0;
  for (double x : obj) vu += (x - mu_u) * (x - mu_u);
  for (double x : z) vl += (x - mu_l) * (x - mu_l);
  const long double sig_u = Np > 1 ? std::sqrt(vu / (Np * (Np - 1))) : 0.0L;
  const long double sig_l = std::sqrt(vl / (M * (M - 1)));
  const long double zq = normal_quantile(1 - alpha / 2.0L);
  const long double tq = student_quantile(1 - alpha / 2.0L, static_cast<int>(M) - 1);
  SaaRef r;
  r.mu_u = mu_u;
  r.sigma_u = sig_u;
  r.ub_lo = mu_u - zq * sig_u;
  r.ub_hi = mu_u + zq * sig_u;
  r.mu_l = mu_l;
  r.sigma_l = sig_l;
  r.lb_lo = mu_l - tq * sig_l;
  r.lb_hi = mu_l + tq * sig_l;
  r.gap = static_cast<double>((mu_u + zq * sig_u - (mu_l - tq * sig_l)) / (mu_u + zq * sig_u));
  return r;
}

}  // namespace oracle
