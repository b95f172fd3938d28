#include "hblab/sigma.hpp"

#include <cmath>
#include <exception>
#include <ostream>
#include <sstream>

#include <Eigen/SVD>

#include "hblab/clark.hpp"
#include "hblab/error.hpp"
#include "hblab/kernels.hpp"

namespace hblab {

namespace {

void add_point(std::vector<SigmaPoint>& pts, cplx z, std::string provenance) {
  for (const auto& p : pts)
    if (std::abs(p.point - z) < 1e-8) return;
  pts.push_back({z, std::move(provenance)});
}

std::vector<cplx> unimodular_roots(const Poly& p) {
  std::vector<cplx> out;
  if (p.degree() < 1) return out;
  for (const auto& r : roots(p))
    if (std::abs(std::abs(r.root) - 1.0) <= 1e-6) out.push_back(r.root / std::abs(r.root));
  return out;
}

std::string angle_note(const char* what, cplx alpha) {
  std::ostringstream os;
  os.precision(12);
  os << what << normalize_angle(std::arg(alpha));
  return os.str();
}

std::size_t poisson_grid(double r) {
  std::size_t n = 4096;
  while (n < (std::size_t{1} << 22) && std::pow(r, static_cast<double>(n)) > 1e-12) n *= 2;
  return n;
}

}  // namespace

std::vector<cplx> sigma_upper(const Function& phi, const Tolerances& tol) {
  if (phi.numerator().is_zero()) throw Error(ErrorKind::ZeroPolynomial, "phi is zero");
  if (!is_outer(phi.numerator(), tol)) throw Error(ErrorKind::NotOuter, "phi has zeros in the disk");
  return unimodular_roots(phi.numerator());
}

bool is_normalized(const HbSpace& s) {
  if (std::abs(s.b(0.0)) > 1e-9) return false;
  return clark_measure(s, 1.0).atoms.empty();
}

std::vector<SigmaPoint> sigma_lower(const HbSpace& s) {
  const auto alphas = alpha_grid(s);
  std::vector<std::vector<Atom>> found(alphas.size());
  std::exception_ptr failure;
  kernels::apply_thread_cap();
  const auto count = static_cast<std::ptrdiff_t>(alphas.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      found[static_cast<std::size_t>(i)] = clark_measure(s, alphas[static_cast<std::size_t>(i)]).atoms;
    } catch (...) {
#pragma omp critical
      failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  std::vector<SigmaPoint> out;
  for (std::size_t i = 0; i < alphas.size(); ++i)
    for (const auto& a : found[i]) add_point(out, a.point, angle_note("atom of mu_alpha, alpha angle ", alphas[i]));
  return out;
}

std::vector<SigmaPoint> sigma_lower(const Poly& phi) {
  if (phi.degree() <= 0) return {};
  return sigma_lower(space_from_phi(phi));
}

SigmaBounds sigma_bounds(const HbSpace& s) {
  SigmaBounds out;
  out.normalized = is_normalized(s);
  out.lower = sigma_lower(s);
  if (out.normalized) {
    for (const cplx& z : sigma_upper(phi_alpha(s, 1.0), s.tol)) add_point(out.upper, z, "unimodular zero of phi_1");
  } else {
    for (const cplx& z : s.circle_zeros_of_a()) add_point(out.upper, z, "unimodular zero of a (mu_1 not normalized)");
  }
  return out;
}

std::vector<cplx> symbol_coefficients(const Function& phi, std::size_t N) {
  std::size_t n = 4096;
  while (n < 8 * N) n *= 2;
  const auto symbol = [&](cplx z) {
    const cplx v = phi(z);
    return std::conj(v) / v;
  };
  const int top = static_cast<int>(N) - 1;
  return fourier_coeffs_sampled(symbol, -top, top, n, 1.0).values;
}

ToeplitzSectionReport toeplitz_section(const Function& phi, std::size_t N, double threshold) {
  const auto u = symbol_coefficients(phi, N);
  const auto offset = static_cast<std::ptrdiff_t>(N) - 1;
  const auto size = static_cast<Eigen::Index>(N);
  Eigen::MatrixXcd T(size, size);
  for (Eigen::Index m = 0; m < size; ++m)
    for (Eigen::Index k = 0; k < size; ++k) T(m, k) = u[static_cast<std::size_t>(m - k + offset)];
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(T);
  ToeplitzSectionReport r;
  r.N = N;
  const auto& sv = svd.singularValues();
  for (Eigen::Index i = sv.size() - 1; i >= 0; --i) r.singular_values.push_back(sv(i));
  for (double v : r.singular_values) r.near_kernel += v < threshold ? 1 : 0;
  r.sigma_min = r.singular_values.front();
  return r;
}

ToeplitzTrend toeplitz_kernel_sections(const Function& phi, std::size_t N, double threshold) {
  if (N == 0 || N > 4096 || (N & (N - 1)) != 0)
    throw Error(ErrorKind::InvalidArgument, "section size must be a power of two <= 4096");
  if (!is_outer(phi.numerator())) throw Error(ErrorKind::NotOuter, "phi has zeros in the disk");
  std::vector<std::size_t> sizes;
  for (std::size_t m = N; m <= 4 * N && m <= 4096; m *= 2) sizes.push_back(m);
  ToeplitzTrend t;
  t.sections.resize(sizes.size());
  std::exception_ptr failure;
  kernels::apply_thread_cap();
  const auto count = static_cast<std::ptrdiff_t>(sizes.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = count - 1; i >= 0; --i) {
    try {
      t.sections[static_cast<std::size_t>(i)] = toeplitz_section(phi, sizes[static_cast<std::size_t>(i)], threshold);
    } catch (...) {
#pragma omp critical
      failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  t.stable = true;
  for (const auto& s : t.sections) t.stable = t.stable && s.near_kernel == t.sections.front().near_kernel;
  t.estimated_kernel_dim = t.sections.back().near_kernel;
  return t;
}

void write_toeplitz_csv(std::ostream& os, const ToeplitzTrend& trend) {
  os << "N,k,sigma_k\n";
  os.precision(17);
  for (const auto& s : trend.sections)
    for (std::size_t k = 0; k < s.singular_values.size(); ++k) os << s.N << ',' << k << ',' << s.singular_values[k] << '\n';
}

Membership j_phi_membership(const Function& phi, const std::function<cplx(cplx)>& h, std::size_t n, double tol) {
  const auto fh = kernels::dft(kernels::sample([&](cplx z) { return phi(z) * h(z); }, n, 1.0), 1.0);
  const auto gh = kernels::dft(kernels::sample([&](cplx z) { return std::conj(phi(z)) * h(z); }, n, 1.0), 1.0);
  Membership m;
  double minus = 0.0, plus = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    if (k >= n / 2) minus += std::norm(fh[k]);
    else plus += std::norm(gh[k]);
  }
  m.minus_residual = std::sqrt(minus);
  m.plus_residual = std::sqrt(plus);
  m.member = m.minus_residual < tol && m.plus_residual < tol;
  return m;
}

cplx pseudocontinuation_eval(const Function& phi, const std::function<cplx(cplx)>& h, cplx z, double tol) {
  const double r = std::abs(z);
  if (std::abs(r - 1.0) < 1e-12) throw Error(ErrorKind::OnCircle, "pseudocontinuation: z on the circle");
  const Membership m = j_phi_membership(phi, h, 4096, tol);
  if (!m.member) throw Error(ErrorKind::NotInJ, "h fails the two-sided membership test for J_phi");

  const cplx w = r < 1.0 ? z : 1.0 / std::conj(z);
  const double rw = std::abs(w);
  const std::size_t n = poisson_grid(rw);
  const auto poisson = [&](cplx zeta) { return (1.0 - rw * rw) / std::norm(zeta - w); };
  if (r < 1.0) {
    const cplx pz = phi(z);
    if (pz == cplx{}) throw Error(ErrorKind::Pole, "phi vanishes at z");
    return kernels::mean([&](cplx zeta) { return poisson(zeta) * phi(zeta) * h(zeta); }, n, 1.0) / pz;
  }
  const cplx pw = phi(w);
  if (pw == cplx{}) throw Error(ErrorKind::Pole, "phi vanishes at 1/conj(z)");
  const cplx G = kernels::mean([&](cplx zeta) { return poisson(zeta) * phi(zeta) * std::conj(h(zeta)); }, n, 1.0);
  return std::conj(G) / std::conj(pw);
}

}  // namespace hblab
