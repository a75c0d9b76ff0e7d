#include "anchorsr/dict/dictionary.hpp"

#include <cmath>

#include "anchorsr/error.hpp"

namespace anchorsr {

AnchorDictionary::AnchorDictionary(Mat atoms) : atoms_(std::move(atoms)) {
  for (Eigen::Index j = 0; j < atoms_.cols(); ++j) {
    const double n = atoms_.col(j).norm();
    if (!(n > 0.0) || !std::isfinite(n)) throw InvalidInput("AnchorDictionary: zero or non-finite atom");
    atoms_.col(j) /= n;
  }
}

AnchorDictionary AnchorDictionary::from_unit_atoms(Mat atoms) {
  for (Eigen::Index j = 0; j < atoms.cols(); ++j) {
    if (std::abs(atoms.col(j).norm() - 1.0) > 1e-8) throw FormatError("AnchorDictionary: atom is not unit norm");
  }
  return AnchorDictionary(std::move(atoms), Trusted{});
}

bool canonicalize_sign(Eigen::Ref<Vec> v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (v[i] == 0.0) continue;
    if (v[i] < 0.0) {
      v = -v;
      return true;
    }
    return false;
  }
  return false;
}

double max_coherence(const AnchorDictionary& dict) {
  double m = 0.0;
  const Mat& a = dict.atoms();
  constexpr Eigen::Index kBlock = 512;
  for (Eigen::Index b = 0; b < a.cols(); b += kBlock) {
    const Eigen::Index nb = std::min(kBlock, a.cols() - b);
    const Mat g = a.transpose() * a.middleCols(b, nb);
    for (Eigen::Index c = 0; c < nb; ++c)
      for (Eigen::Index r = 0; r < g.rows(); ++r)
        if (r != b + c) m = std::max(m, std::abs(g(r, c)));
  }
  return m;
}

}  // namespace anchorsr
