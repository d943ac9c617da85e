#include <algorithm>
#include <cmath>

#include "pprad/constants.hpp"
#include "pprad/greens.hpp"

namespace pprad::greens {

namespace {

using specfun::CVec3;
using specfun::RadialKind;

Mat3 outer(const CVec3& a, const CVec3& b) { return a * b.transpose(); }

struct PointData {
  specfun::SphericalPoint pt;
  specfun::LegendreColumns cols;
  PointData(int l_max, const Vec3& r) : pt(specfun::to_spherical(r)), cols(l_max, pt.theta) {}
};

bool on_axis(const specfun::SphericalPoint& pt) { return std::abs(std::sin(pt.theta)) == 0.0; }

}  // namespace

std::vector<AngularBlock> angular_blocks(int l_max, const Vec3& r, const Vec3& rp) {
  std::vector<AngularBlock> out(static_cast<std::size_t>(l_max) + 1);
  for (auto& b : out) b.mm = b.rr = b.rz = b.zr = b.zz = Mat3::Zero();
  if (l_max < 1) return out;

  PointData a(l_max, r), b(l_max, rp);
  // on the polar axis every column with m >= 2 vanishes identically
  const int m_stop = (on_axis(a.pt) || on_axis(b.pt)) ? std::min(1, l_max) : l_max;
  for (int m = 0; m <= m_stop; ++m) {
    const auto& ca = a.cols.next();
    const auto& cb = b.cols.next();
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    const cplx ea = std::polar(1.0, m * a.pt.phi), eb = std::polar(1.0, m * b.pt.phi);
    for (int l = std::max(m, 1); l <= l_max; ++l) {
      const auto idx = static_cast<std::size_t>(l - m);
      // Y_l^m and Y_l^{-m} = (-1)^m conj(Y_l^m) at both points
      const specfun::HarmonicValue ap{ca.p[idx] * ea, ca.dp[idx] * ea, ca.mq[idx] * ea};
      const specfun::HarmonicValue am{sign * ca.p[idx] * std::conj(ea), sign * ca.dp[idx] * std::conj(ea),
                                      -sign * ca.mq[idx] * std::conj(ea)};
      const specfun::HarmonicValue bp{cb.p[idx] * eb, cb.dp[idx] * eb, cb.mq[idx] * eb};
      const specfun::HarmonicValue bm{sign * cb.p[idx] * std::conj(eb), sign * cb.dp[idx] * std::conj(eb),
                                      -sign * cb.mq[idx] * std::conj(eb)};
      const auto va = specfun::vector_harmonics(a.pt, ap);
      const auto vb = specfun::vector_harmonics(b.pt, bm);
      auto& blk = out[static_cast<std::size_t>(l)];
      blk.mm += sign * outer(va.x, vb.x);
      blk.rr += sign * outer(va.radial, vb.radial);
      blk.rz += sign * outer(va.radial, vb.z);
      blk.zr += sign * outer(va.z, vb.radial);
      blk.zz += sign * outer(va.z, vb.z);
      if (m > 0) {
        const auto wa = specfun::vector_harmonics(a.pt, am);
        const auto wb = specfun::vector_harmonics(b.pt, bp);
        blk.mm += sign * outer(wa.x, wb.x);
        blk.rr += sign * outer(wa.radial, wb.radial);
        blk.rz += sign * outer(wa.radial, wb.z);
        blk.zr += sign * outer(wa.z, wb.radial);
        blk.zz += sign * outer(wa.z, wb.z);
      }
    }
  }
  return out;
}

struct SphereScattering::Radial {
  MieTable mie;
  // f_l, l(l+1) f_l / x and (x f_l)' / x of the outgoing radial function
  std::vector<Scaled> f, a, b;
  std::vector<Scaled> fp, ap, bp;  // same at r'
};

SphereScattering::SphereScattering(SphereBody sphere, const Vec3& r, const Vec3& rp)
    : sphere_(std::move(sphere)), r_(r - sphere_.center), rp_(rp - sphere_.center), coincident_(r == rp) {
  if (!(sphere_.radius > 0.0)) fail(ErrorKind::Domain, "sphere radius must be > 0");
  const double limit = sphere_.radius * (1.0 + 1e-12);
  if (!(r_.norm() > limit) || !(rp_.norm() > limit))
    fail(ErrorKind::Geometry, "evaluation point inside or on the sphere");
  materials::validate(sphere_.material);
}

std::shared_ptr<const std::vector<AngularBlock>> SphereScattering::blocks(int l_max) const {
  std::lock_guard<std::mutex> lock(mutex_);
  if (blocks_ && static_cast<int>(blocks_->size()) > l_max) return blocks_;
  const int have = blocks_ ? static_cast<int>(blocks_->size()) - 1 : 0;
  const int want = std::min(specfun::kOrderCap, std::max(l_max, 2 * have));
  blocks_ = std::make_shared<const std::vector<AngularBlock>>(angular_blocks(want, r_, rp_));
  return blocks_;
}

SphereScattering::Radial SphereScattering::radial(int l_max, double k, double omega) const {
  Radial rad;
  rad.mie = mie_table(l_max, k, sphere_, omega);
  auto fill = [&](double dist, std::vector<Scaled>& f, std::vector<Scaled>& a, std::vector<Scaled>& b) {
    const double x = k * dist;
    const auto t = specfun::radial_table(RadialKind::Hankel, l_max, x);
    f = t.value;
    a.resize(f.size());
    b.resize(f.size());
    for (std::size_t l = 0; l < f.size(); ++l) {
      const double ll1 = static_cast<double>(l) * (l + 1.0);
      a[l] = f[l] * cplx(ll1 / x);
      b[l] = t.riccati[l] * cplx(1.0 / x);
    }
  };
  fill(r_.norm(), rad.f, rad.a, rad.b);
  if (coincident_) {
    rad.fp = rad.f;
    rad.ap = rad.a;
    rad.bp = rad.b;
  } else {
    fill(rp_.norm(), rad.fp, rad.ap, rad.bp);
  }
  return rad;
}

namespace {

// i T_l^P k / (l(l+1)) times the radial-angular products, as a matrix.
Mat3 scattered_term(int l, const MieTable& mie, const std::vector<Scaled>& f, const std::vector<Scaled>& a,
                    const std::vector<Scaled>& b, const std::vector<Scaled>& fp, const std::vector<Scaled>& ap,
                    const std::vector<Scaled>& bp, const AngularBlock& blk, double k) {
  const auto i = static_cast<std::size_t>(l);
  const cplx c(0.0, k / (static_cast<double>(l) * (l + 1.0)));
  const Scaled tm = mie.t_m[i] * c, tn = mie.t_n[i] * c;
  const cplx cmm = (tm * f[i] * fp[i]).value();
  const cplx crr = (tn * a[i] * ap[i]).value();
  const cplx crz = (tn * a[i] * bp[i]).value();
  const cplx czr = (tn * b[i] * ap[i]).value();
  const cplx czz = (tn * b[i] * bp[i]).value();
  return cmm * blk.mm + crr * blk.rr + crz * blk.rz + czr * blk.zr + czz * blk.zz;
}

double tail_bound(double b1, double b2, double b3) {
  const double big = std::max({b1, b2, b3});
  double q = 0.0;
  if (b1 > 0.0 && b2 > 0.0) q = std::max(q, b3 / b2);
  if (b1 > 0.0) q = std::max(q, b2 / b1);
  q = std::min(q, 0.9);
  return std::max(b3, big * q / (1.0 - q));
}

int initial_order(double k, const Vec3& r, const Vec3& rp, int cap) {
  const double x = k * std::max(r.norm(), rp.norm());
  return std::clamp(32 + static_cast<int>(std::ceil(x)), 1, cap);
}

}  // namespace

GreensTensor SphereScattering::evaluate(double k, double omega, const MultipolePolicy& policy) const {
  if (!(k > 0.0)) fail(ErrorKind::Domain, "wavenumber must be > 0");
  if (coincident_) fail(ErrorKind::CoincidentPoint, "use im_trace for coincident points");
  const GreensTensor free = g0(r_, rp_, k);
  const bool fixed = policy.l_fixed > 0;
  const int cap = std::min(policy.l_cap, specfun::kOrderCap);
  int L = fixed ? policy.l_fixed : initial_order(k, r_, rp_, cap);

  while (true) {
    const auto blk = blocks(L);
    const auto rad = radial(L, k, omega);
    GreensTensor g = free;
    double b1 = 0.0, b2 = 0.0, b3 = 0.0;
    int small = 0;
    for (int l = 1; l <= L; ++l) {
      const Mat3 t = scattered_term(l, rad.mie, rad.f, rad.a, rad.b, rad.fp, rad.ap, rad.bp,
                                    (*blk)[static_cast<std::size_t>(l)], k);
      g.value += t;
      g.l_max = l;
      const double bn = t.norm();
      b1 = b2;
      b2 = b3;
      b3 = bn;
      if (fixed) continue;
      small = (bn < policy.rel_tol * g.value.norm()) ? small + 1 : 0;
      if (small == 3) break;
    }
    g.tail_estimate = tail_bound(b1, b2, b3);
    if (fixed || small == 3) return g;
    if (L >= cap)
      throw ConvergenceError("multipole sum not converged at l_cap = " + std::to_string(cap), g);
    L = std::min(2 * L, cap);
  }
}

std::vector<Mat3> SphereScattering::partial_sums(double k, double omega, std::span<const int> l_grid) const {
  if (!(k > 0.0)) fail(ErrorKind::Domain, "wavenumber must be > 0");
  if (coincident_) fail(ErrorKind::CoincidentPoint, "partial sums need distinct points");
  if (!std::is_sorted(l_grid.begin(), l_grid.end()) || (!l_grid.empty() && l_grid.front() < 0))
    fail(ErrorKind::Domain, "l grid must be non-negative and ascending");
  std::vector<Mat3> out;
  if (l_grid.empty()) return out;
  const int L = std::max(1, l_grid.back());
  const auto blk = blocks(L);
  const auto rad = radial(L, k, omega);
  Mat3 g = g0(r_, rp_, k).value;
  std::size_t next = 0;
  for (int l = 0; l <= L && next < l_grid.size(); ++l) {
    if (l > 0)
      g += scattered_term(l, rad.mie, rad.f, rad.a, rad.b, rad.fp, rad.ap, rad.bp,
                          (*blk)[static_cast<std::size_t>(l)], k);
    while (next < l_grid.size() && l_grid[next] == l) {
      out.push_back(g);
      ++next;
    }
  }
  return out;
}

double SphereScattering::im_trace(double k, double omega, const MultipolePolicy& policy, int* l_used) const {
  if (!(k > 0.0)) fail(ErrorKind::Domain, "wavenumber must be > 0");
  if (!coincident_) fail(ErrorKind::Domain, "im_trace needs r == r'");
  const bool fixed = policy.l_fixed > 0;
  const int cap = std::min(policy.l_cap, specfun::kOrderCap);
  int L = fixed ? policy.l_fixed : initial_order(k, r_, rp_, cap);
  const double free = im_g0_trace(k);

  while (true) {
    const auto blk = blocks(L);
    const auto rad = radial(L, k, omega);
    double sum = free;
    int small = 0, last = 0;
    for (int l = 1; l <= L; ++l) {
      const Mat3 t = scattered_term(l, rad.mie, rad.f, rad.a, rad.b, rad.fp, rad.ap, rad.bp,
                                    (*blk)[static_cast<std::size_t>(l)], k);
      sum += t.trace().imag();
      last = l;
      if (fixed) continue;
      small = (t.norm() < policy.rel_tol * std::abs(sum)) ? small + 1 : 0;
      if (small == 3) break;
    }
    if (l_used) *l_used = last;
    if (fixed || small == 3) return sum;
    if (L >= cap) {
      GreensTensor partial;
      partial.value = Mat3::Identity() * cplx(0.0, sum / 3.0);
      partial.l_max = last;
      throw ConvergenceError("multipole trace not converged at l_cap = " + std::to_string(cap), partial);
    }
    L = std::min(2 * L, cap);
  }
}

GreensTensor g_sphere(const Vec3& r, const Vec3& rp, double k, double omega, const SphereBody& sphere,
                      const MultipolePolicy& policy) {
  return SphereScattering(sphere, r, rp).evaluate(k, omega, policy);
}

Mat3 regular_wave_dyad(int l, Polarization pol, double k, const Vec3& r, const Vec3& rp) {
  Mat3 out = Mat3::Zero();
  for (int m = -l; m <= l; ++m) {
    const auto a = specfun::spherical_wave(specfun::WaveIndex::make(pol, l, m), specfun::Regularity::Regular, k, r);
    const auto b = specfun::spherical_wave(specfun::WaveIndex::make(pol, l, -m), specfun::Regularity::Regular, k, rp);
    out += outer(a, b);
  }
  return out;
}

}  // namespace pprad::greens
