#ifndef IHC_SPECTRAL_HPP
#define IHC_SPECTRAL_HPP

#include <Eigen/Dense>
#include <array>
#include <variant>
#include <vector>

namespace ihc {

/// Coefficients of an L2 element against the orthonormal Dirichlet eigenbasis.
using SpectralState = Eigen::VectorXd;

struct IntervalDomain {
  double length;
};

struct RectangleDomain {
  double lx;
  double ly;
};

using DomainSpec = std::variant<IntervalDomain, RectangleDomain>;

/// Axis-aligned sub-box of the domain (1 or 2 axes).
struct Region {
  std::vector<double> lo;
  std::vector<double> hi;
};

Region full_region(const DomainSpec& domain);
bool region_is_full(const DomainSpec& domain, const Region& region);

/// Truncated Dirichlet eigenbasis of -Laplace on an interval or rectangle.
/// Eigenvalues are closed form and sorted ascending; rectangle ties are
/// broken lexicographically on the index pair.
class Eigenbasis {
public:
  static Eigenbasis build(const DomainSpec& domain, int mode_count);

  int mode_count() const { return static_cast<int>(eigenvalues_.size()); }
  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }
  double lambda1() const { return eigenvalues_(0); }
  const DomainSpec& domain() const { return domain_; }
  /// Per-mode sine index pair; second entry is 0 for interval domains.
  const std::vector<std::array<int, 2>>& mode_indices() const {
    return indices_;
  }
  int dims() const;

private:
  Eigenbasis(DomainSpec domain, Eigen::VectorXd eigenvalues,
             std::vector<std::array<int, 2>> indices);

  DomainSpec domain_;
  Eigen::VectorXd eigenvalues_;
  std::vector<std::array<int, 2>> indices_;
};

/// Galerkin representation of multiplication by the region indicator.
struct RegionOperator {
  Region region;
  Eigen::MatrixXd gram;  // G_mn = integral over region of e_m e_n
  bool identity = false; // region equals the full domain

  SpectralState apply(const SpectralState& w) const {
    return identity ? w : SpectralState(gram * w);
  }
};

/// Diagonal heat semigroup action: coeff_n -> exp(-lambda_n t) coeff_n.
SpectralState semigroup_apply(const Eigenbasis& basis, double t,
                              const SpectralState& state);

/// Per-mode decay factors exp(-lambda_n t).
Eigen::VectorXd decay_factors(const Eigenbasis& basis, double t);

RegionOperator region_gram(const Eigenbasis& basis, const Region& region);

/// sqrt(w^T G w): the L2 norm of the indicator times w in the truncated span.
double restricted_norm(const RegionOperator& op, const SpectralState& w);

}  // namespace ihc

#endif
