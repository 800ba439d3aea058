#include "ihc/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ihc/errors.hpp"

namespace ihc {

namespace {

constexpr double kPi = std::numbers::pi;

// Closed-form integral over (a,b) of the product of orthonormal sine modes
// m and n on (0,L): (2/L) sin(m pi x / L) sin(n pi x / L).
double sine_product_integral(double L, int m, int n, double a, double b) {
  auto anti = [&](double x) {
    if (m == n) {
      // (1/L) [x - L/(2 m pi) sin(2 m pi x / L)]
      return (x - L / (2.0 * m * kPi) * std::sin(2.0 * m * kPi * x / L)) / L;
    }
    const double d = static_cast<double>(m - n);
    const double s = static_cast<double>(m + n);
    return (std::sin(d * kPi * x / L) / (d * kPi) -
            std::sin(s * kPi * x / L) / (s * kPi));
  };
  return anti(b) - anti(a);
}

std::vector<double> domain_lengths(const DomainSpec& domain) {
  if (const auto* iv = std::get_if<IntervalDomain>(&domain))
    return {iv->length};
  const auto& rc = std::get<RectangleDomain>(domain);
  return {rc.lx, rc.ly};
}

}  // namespace

Region full_region(const DomainSpec& domain) {
  const auto lengths = domain_lengths(domain);
  Region region;
  region.lo.assign(lengths.size(), 0.0);
  region.hi = lengths;
  return region;
}

bool region_is_full(const DomainSpec& domain, const Region& region) {
  const auto lengths = domain_lengths(domain);
  if (region.lo.size() != lengths.size() || region.hi.size() != lengths.size())
    return false;
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    if (region.lo[i] != 0.0 || region.hi[i] != lengths[i]) return false;
  }
  return true;
}

Eigenbasis::Eigenbasis(DomainSpec domain, Eigen::VectorXd eigenvalues,
                       std::vector<std::array<int, 2>> indices)
    : domain_(std::move(domain)),
      eigenvalues_(std::move(eigenvalues)),
      indices_(std::move(indices)) {}

int Eigenbasis::dims() const {
  return std::holds_alternative<IntervalDomain>(domain_) ? 1 : 2;
}

Eigenbasis Eigenbasis::build(const DomainSpec& domain, int mode_count) {
  if (mode_count < 1) throw ConfigError("mode_count must be >= 1");
  for (double len : domain_lengths(domain)) {
    if (!(len > 0.0)) throw ConfigError("domain side lengths must be positive");
  }

  Eigen::VectorXd lambda(mode_count);
  std::vector<std::array<int, 2>> indices;
  indices.reserve(mode_count);

  if (const auto* iv = std::get_if<IntervalDomain>(&domain)) {
    for (int n = 1; n <= mode_count; ++n) {
      const double q = n * kPi / iv->length;
      lambda(n - 1) = q * q;
      indices.push_back({n, 0});
    }
    return Eigenbasis(domain, std::move(lambda), std::move(indices));
  }

  const auto& rc = std::get<RectangleDomain>(domain);
  // Enumerate a generous index box, then sort ascending with a
  // lexicographic tie-break on (m, n).
  const int side = mode_count + 1;
  struct Mode {
    double lambda;
    int m, n;
  };
  std::vector<Mode> modes;
  modes.reserve(static_cast<std::size_t>(side) * side);
  for (int m = 1; m <= side; ++m) {
    for (int n = 1; n <= side; ++n) {
      const double qm = m * kPi / rc.lx;
      const double qn = n * kPi / rc.ly;
      modes.push_back({qm * qm + qn * qn, m, n});
    }
  }
  std::sort(modes.begin(), modes.end(), [](const Mode& a, const Mode& b) {
    if (a.lambda != b.lambda) return a.lambda < b.lambda;
    if (a.m != b.m) return a.m < b.m;
    return a.n < b.n;
  });
  for (int i = 0; i < mode_count; ++i) {
    lambda(i) = modes[i].lambda;
    indices.push_back({modes[i].m, modes[i].n});
  }
  return Eigenbasis(domain, std::move(lambda), std::move(indices));
}

Eigen::VectorXd decay_factors(const Eigenbasis& basis, double t) {
  if (t < 0.0) throw std::domain_error("semigroup time must be nonnegative");
  return (-t * basis.eigenvalues().array()).exp();
}

SpectralState semigroup_apply(const Eigenbasis& basis, double t,
                              const SpectralState& state) {
  return decay_factors(basis, t).cwiseProduct(state);
}

RegionOperator region_gram(const Eigenbasis& basis, const Region& region) {
  const auto lengths = domain_lengths(basis.domain());
  if (region.lo.size() != lengths.size() ||
      region.hi.size() != lengths.size())
    throw ConfigError("region dimensionality does not match the domain");
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    if (region.lo[i] < 0.0 || region.hi[i] > lengths[i] ||
        region.lo[i] > region.hi[i])
      throw ConfigError("region must be contained in the domain");
  }

  const int n_modes = basis.mode_count();
  RegionOperator op;
  op.region = region;
  if (region_is_full(basis.domain(), region)) {
    op.gram = Eigen::MatrixXd::Identity(n_modes, n_modes);
    op.identity = true;
    return op;
  }

  op.gram.resize(n_modes, n_modes);
  const auto& idx = basis.mode_indices();
  for (int i = 0; i < n_modes; ++i) {
    for (int j = i; j < n_modes; ++j) {
      double g = sine_product_integral(lengths[0], idx[i][0], idx[j][0],
                                       region.lo[0], region.hi[0]);
      if (lengths.size() == 2) {
        g *= sine_product_integral(lengths[1], idx[i][1], idx[j][1],
                                   region.lo[1], region.hi[1]);
      }
      op.gram(i, j) = g;
      op.gram(j, i) = g;
    }
  }
  return op;
}

double restricted_norm(const RegionOperator& op, const SpectralState& w) {
  if (op.identity) return w.norm();
  if (op.gram.rows() != w.size())
    throw std::invalid_argument("restricted_norm: dimension mismatch");
  // Clamp tiny negative round-off from the quadratic form.
  const double q = w.dot(op.gram * w);
  return std::sqrt(std::max(q, 0.0));
}

}  // namespace ihc
