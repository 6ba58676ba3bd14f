#include "cantorforge/cell.hpp"

#include <algorithm>

namespace cantorforge {

CellId CellId::child(std::uint32_t ordinal) const {
  auto path = path_;
  path.push_back(ordinal);
  return CellId(std::move(path));
}

bool CellId::is_prefix_of(const CellId& other) const {
  return path_.size() <= other.path_.size() &&
         std::equal(path_.begin(), path_.end(), other.path_.begin());
}

std::string CellId::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < path_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(path_[i]);
  }
  return out + "]";
}

bool pairwise_disjoint(std::vector<CellId> cells) {
  std::sort(cells.begin(), cells.end());
  for (std::size_t i = 1; i < cells.size(); ++i) {
    if (cells[i - 1].is_prefix_of(cells[i])) return false;
  }
  return true;
}

std::string DyadicBound::to_string() const {
  return exponent == 0 ? std::string("1") : "2^-" + std::to_string(exponent);
}

}  // namespace cantorforge
