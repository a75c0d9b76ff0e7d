#pragma once

#include "anchorsr/linalg.hpp"

namespace anchorsr {

/// Unit-norm anchor atoms (one per column) quantizing the LR feature space.
class AnchorDictionary {
 public:
  AnchorDictionary() = default;
  /// Normalizes every column; zero columns are rejected.
  explicit AnchorDictionary(Mat atoms);
  /// Wraps atoms that are already unit norm (within 1e-8) without touching
  /// their bits. Used by deserialization.
  static AnchorDictionary from_unit_atoms(Mat atoms);

  int size() const noexcept { return static_cast<int>(atoms_.cols()); }
  int dim() const noexcept { return static_cast<int>(atoms_.rows()); }
  const Mat& atoms() const noexcept { return atoms_; }
  auto atom(int j) const { return atoms_.col(j); }

  friend bool operator==(const AnchorDictionary& a, const AnchorDictionary& b) {
    return a.atoms_.rows() == b.atoms_.rows() && a.atoms_.cols() == b.atoms_.cols() && a.atoms_ == b.atoms_;
  }

 private:
  struct Trusted {};
  AnchorDictionary(Mat atoms, Trusted) : atoms_(std::move(atoms)) {}
  Mat atoms_;
};

/// Flips the sign of `v` so its first non-zero coordinate is positive.
/// Returns true when a flip happened.
bool canonicalize_sign(Eigen::Ref<Vec> v);

/// Largest |<a_i, a_j>| over distinct atoms.
double max_coherence(const AnchorDictionary& dict);

}  // namespace anchorsr
