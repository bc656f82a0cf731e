// Studentized range distribution by Gauss-Legendre quadrature, following the
// classic Copenhaver & Holland (1988) scheme: an inner integral for the range of
// `groups` standard normals and an outer integral over the chi scale factor.

#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/distributions/students_t.hpp>

#include "swarmcongest/error.hpp"
#include "swarmcongest/stats.hpp"

namespace swarmcongest {

namespace {

double pnorm(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

// Probability that the range of cc standard normals is below w (rr = 1 range).
double range_probability(double w, double rr, double cc) {
  constexpr int kLeg = 12;
  constexpr int kHalf = 6;
  constexpr double kC1 = -30.0;
  constexpr double kC3 = 60.0;
  constexpr double kBb = 8.0;
  constexpr double kWlar = 3.0;
  constexpr double kXleg[kHalf] = {
      0.981560634246719250690549090149, 0.904117256370474856678465866119,
      0.769902674194304687036893833213, 0.587317954286617447296702418941,
      0.367831498998180193752691536644, 0.125233408511468915472441369464};
  constexpr double kAleg[kHalf] = {
      0.047175336386511827194615961485, 0.106939325995318430960254718194,
      0.160078328543346226334652529543, 0.203167426723065921749064455810,
      0.233492536538354808760849898925, 0.249147045813402785000562436043};

  const double qsqz = w * 0.5;
  if (qsqz >= kBb) return 1.0;

  // P(|Z| < w/2)^cc: all values inside a window of width w centered at zero.
  double pr_w = 2.0 * pnorm(qsqz) - 1.0;
  pr_w = pr_w >= 1.0 ? 1.0 : std::pow(pr_w, cc);

  const int wincr = w > kWlar ? 2 : 3;
  double blb = qsqz;
  const double binc = (kBb - qsqz) / wincr;
  double bub = blb + binc;
  double einsum = 0.0;
  const double cc1 = cc - 1.0;
  for (int wi = 1; wi <= wincr; ++wi) {
    double elsum = 0.0;
    const double a = 0.5 * (bub + blb);
    const double b = 0.5 * (bub - blb);
    for (int jj = 1; jj <= kLeg; ++jj) {
      int j;
      double xx;
      if (kHalf < jj) {
        j = kLeg - jj + 1;
        xx = kXleg[j - 1];
      } else {
        j = jj;
        xx = -kXleg[j - 1];
      }
      const double ac = a + b * xx;
      const double qexpo = ac * ac;
      if (qexpo > kC3) break;
      const double pplus = 2.0 * pnorm(ac);
      const double pminus = 2.0 * pnorm(ac - w);
      double rinsum = pplus * 0.5 - pminus * 0.5;
      if (rinsum >= std::exp(kC1 / cc1)) {
        rinsum = kAleg[j - 1] * std::exp(-0.5 * qexpo) * std::pow(rinsum, cc1);
        elsum += rinsum;
      }
    }
    elsum *= 2.0 * b * cc / std::sqrt(2.0 * std::numbers::pi);
    einsum += elsum;
    blb = bub;
    bub += binc;
  }
  pr_w += einsum;
  if (pr_w <= std::exp(kC1 / rr)) return 0.0;
  pr_w = std::pow(pr_w, rr);
  return pr_w >= 1.0 ? 1.0 : pr_w;
}

}  // namespace

double ptukey(double q, double groups, double df) {
  if (!(groups >= 2.0) || !(df >= 2.0)) {
    throw PreconditionError("studentized range needs >= 2 groups and >= 2 error df");
  }
  if (q <= 0.0) return 0.0;
  constexpr double rr = 1.0;
  if (df > 25000.0) return range_probability(q, rr, groups);

  constexpr int kLegQ = 16;
  constexpr int kHalfQ = 8;
  constexpr double kEps1 = -30.0;
  constexpr double kEps2 = 1.0e-14;
  constexpr double kXlegq[kHalfQ] = {
      0.989400934991649932596154173450, 0.944575023073232576077988415535,
      0.865631202387831743880467897712, 0.755404408355003033895101194847,
      0.617876244402643748446671764049, 0.458016777657227386342419442984,
      0.281603550779258913230460501460, 0.950125098376374401853193354250e-1};
  constexpr double kAlegq[kHalfQ] = {
      0.271524594117540948517805724560e-1, 0.622535239386478928628438369944e-1,
      0.951585116824927848099251076022e-1, 0.124628971255533872052476282192,
      0.149595988816576732081501730547,    0.169156519395002538189312079030,
      0.182603415044923588866763667969,    0.189450610455068496285396723208};

  const double f2 = df * 0.5;
  double f2lf = f2 * std::log(df) - df * std::numbers::ln2 - std::lgamma(f2);
  const double f21 = f2 - 1.0;
  const double ff4 = df * 0.25;
  double ulen;
  if (df <= 100.0) {
    ulen = 1.0;
  } else if (df <= 800.0) {
    ulen = 0.5;
  } else if (df <= 5000.0) {
    ulen = 0.25;
  } else {
    ulen = 0.125;
  }
  f2lf += std::log(ulen);

  double ans = 0.0;
  for (int i = 1; i <= 50; ++i) {
    double otsum = 0.0;
    const double twa1 = (2 * i - 1) * ulen;
    for (int jj = 1; jj <= kLegQ; ++jj) {
      int j;
      double t1;
      if (kHalfQ < jj) {
        j = jj - kHalfQ - 1;
        t1 = f2lf + f21 * std::log(twa1 + kXlegq[j] * ulen) - (kXlegq[j] * ulen + twa1) * ff4;
      } else {
        j = jj - 1;
        t1 = f2lf + f21 * std::log(twa1 - kXlegq[j] * ulen) + (kXlegq[j] * ulen - twa1) * ff4;
      }
      if (t1 >= kEps1) {
        const double scale = kHalfQ < jj ? (kXlegq[j] * ulen + twa1) : (twa1 - kXlegq[j] * ulen);
        const double qsqz = q * std::sqrt(scale * 0.5);
        otsum += range_probability(qsqz, rr, groups) * kAlegq[j] * std::exp(t1);
      }
    }
    if (i * ulen >= 1.0 && otsum <= kEps2) break;
    ans += otsum;
  }
  return ans > 1.0 ? 1.0 : ans;
}

double qtukey(double probability, double groups, double df) {
  if (!(probability > 0.0 && probability < 1.0)) {
    throw PreconditionError("qtukey probability must lie in (0, 1)");
  }
  double lo = 0.0;
  double hi = 1.0;
  while (ptukey(hi, groups, df) < probability) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e6) throw Error("qtukey failed to bracket");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-12 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (ptukey(mid, groups, df) < probability) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double f_upper_tail(double f, double df1, double df2) {
  if (std::isinf(f)) return 0.0;
  if (!(f > 0.0)) return 1.0;
  const boost::math::fisher_f dist(df1, df2);
  return boost::math::cdf(boost::math::complement(dist, f));
}

double t_two_sided_p(double t, double df) {
  if (std::isinf(t)) return 0.0;
  const boost::math::students_t dist(df);
  return 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
}

}  // namespace swarmcongest
