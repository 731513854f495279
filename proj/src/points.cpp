#include "symdesign/points.hpp"

#include <algorithm>
#include <charconv>

namespace symdesign {

SymmetryPoint::SymmetryPoint(Subgroup lower, std::optional<Subgroup> upper, int j, int grid_k)
    : lower_(std::move(lower)), upper_(std::move(upper)), j_(j), grid_k_(grid_k) {}

SymmetryPoint SymmetryPoint::pure(Subgroup g) {
  return {std::move(g), std::nullopt, 0, 1};
}

SymmetryPoint SymmetryPoint::interpolated(Subgroup lower, Subgroup upper, int j, int grid_k) {
  if (lower.n() != upper.n()) {
    throw ConfigError("interpolated point endpoints come from different groups");
  }
  if (!lower.proper_subset_of(upper)) {
    throw ConfigError("interpolated point requires lower < upper, got " +
                      lower.label().to_string() + " and " + upper.label().to_string());
  }
  if (grid_k < 1 || j < 1 || j > grid_k - 1) {
    throw ConfigError("interior grid index must satisfy 1 <= j <= K-1, got j=" +
                      std::to_string(j) + ", K=" + std::to_string(grid_k));
  }
  return {std::move(lower), std::move(upper), j, grid_k};
}

const Subgroup& SymmetryPoint::pure_subgroup() const {
  if (!is_pure()) throw ConfigError("not a pure symmetry point: " + label());
  return lower_;
}

const Subgroup& SymmetryPoint::lower() const {
  if (is_pure()) throw ConfigError("pure symmetry point has no edge: " + label());
  return lower_;
}

const Subgroup& SymmetryPoint::upper() const {
  if (is_pure()) throw ConfigError("pure symmetry point has no edge: " + label());
  return *upper_;
}

int SymmetryPoint::j() const { return j_; }
int SymmetryPoint::grid_k() const { return grid_k_; }

const Subgroup& SymmetryPoint::skeleton_group() const {
  return is_pure() ? lower_ : *upper_;
}

double SymmetryPoint::beta0() const {
  if (is_pure()) return 1.0;
  return static_cast<double>(lower_.order()) / static_cast<double>(upper_->order());
}

double SymmetryPoint::beta() const {
  if (is_pure()) return 1.0;
  const double b0 = beta0();
  return b0 + (static_cast<double>(j_) / static_cast<double>(grid_k_)) * (1.0 - b0);
}

const Subgroup& SymmetryPoint::nearest_subgroup() const {
  if (is_pure()) return lower_;
  return 2 * j_ > grid_k_ ? lower_ : *upper_;
}

std::string SymmetryPoint::label() const {
  if (is_pure()) return lower_.label().to_string();
  return "mid(" + lower_.label().to_string() + "," + upper_->label().to_string() + "," +
         std::to_string(j_) + "," + std::to_string(grid_k_) + ")";
}

std::string SymmetryPoint::display() const {
  if (is_pure()) return lower_.label().to_string();
  const std::string lo =
      std::to_string(j_) + "/" + std::to_string(grid_k_) + " " + lower_.label().to_string();
  const std::string hi = std::to_string(grid_k_ - j_) + "/" + std::to_string(grid_k_) + " " +
                         upper_->label().to_string();
  // smaller weight first, the lower subgroup on ties
  return j_ <= grid_k_ - j_ ? lo + " + " + hi : hi + " + " + lo;
}

bool operator==(const SymmetryPoint& a, const SymmetryPoint& b) {
  if (a.is_pure() != b.is_pure()) return false;
  if (a.is_pure()) return a.lower_ == b.lower_;
  return a.lower_ == b.lower_ && *a.upper_ == *b.upper_ && a.j_ == b.j_ && a.grid_k_ == b.grid_k_;
}

namespace {

// Grid point j steps from the upper endpoint; 0 and K are the endpoints.
SymmetryPoint grid_point(const Subgroup& lower, const Subgroup& upper, int j, int grid_k) {
  if (j == 0) return SymmetryPoint::pure(upper);
  if (j == grid_k) return SymmetryPoint::pure(lower);
  return SymmetryPoint::interpolated(lower, upper, j, grid_k);
}

bool point_less(const SymmetryPoint& a, const SymmetryPoint& b) { return a.label() < b.label(); }

}  // namespace

std::vector<SymmetryPoint> neighbors(const SymmetryPoint& point, const SubgroupLattice& lattice,
                                     int grid_k) {
  if (grid_k < 1) {
    throw ConfigError("interval count K must be >= 1, got " + std::to_string(grid_k));
  }
  if (point.n() != lattice.n) {
    throw ConfigError("point " + point.label() + " does not belong to a Dih_" +
                      std::to_string(lattice.n) + " lattice");
  }
  std::vector<SymmetryPoint> out;
  out.push_back(point);

  if (point.is_pure()) {
    const int idx = lattice.index_of(point.pure_subgroup());
    if (idx < 0) {
      throw ConfigError("subgroup " + point.label() + " is not a lattice node");
    }
    // As the lower endpoint of an edge the point sits at j = K; as the upper
    // endpoint it sits at j = 0. Either way the neighbor is one step inward.
    for (int hi : lattice.upper_covers(idx)) {
      out.push_back(grid_point(point.pure_subgroup(), lattice.nodes[static_cast<std::size_t>(hi)],
                               grid_k - 1, grid_k));
    }
    for (int lo : lattice.lower_covers(idx)) {
      out.push_back(grid_point(lattice.nodes[static_cast<std::size_t>(lo)], point.pure_subgroup(),
                               1, grid_k));
    }
  } else {
    if (point.grid_k() != grid_k) {
      throw ConfigError("point " + point.label() + " uses K=" + std::to_string(point.grid_k()) +
                        " but the search grid uses K=" + std::to_string(grid_k));
    }
    if (!lattice.covers_pair(point.lower(), point.upper())) {
      throw ConfigError("edge (" + point.lower().label().to_string() + ", " +
                        point.upper().label().to_string() + ") is not a covering pair");
    }
    out.push_back(grid_point(point.lower(), point.upper(), point.j() - 1, grid_k));
    out.push_back(grid_point(point.lower(), point.upper(), point.j() + 1, grid_k));
  }

  std::sort(out.begin(), out.end(), point_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

int parse_int(std::string_view text, const std::string& context) {
  int value = 0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || text.empty()) {
    throw ParseError("malformed integer in " + context);
  }
  return value;
}

}  // namespace

SubgroupLabel parse_subgroup_label(const std::string& text) {
  if (text.size() < 2) throw ParseError("malformed subgroup label: '" + text + "'");
  SubgroupLabel label;
  const std::string_view body(text.data() + 1, text.size() - 1);
  if (text[0] == 'K') {
    label.family = SubgroupFamily::Reflectional;
    label.a = parse_int(body, "label '" + text + "'");
    return label;
  }
  if (text[0] != 'H') throw ParseError("malformed subgroup label: '" + text + "'");
  const auto dot = body.find('.');
  if (dot == std::string_view::npos) {
    label.family = SubgroupFamily::Rotational;
    label.a = parse_int(body, "label '" + text + "'");
    return label;
  }
  label.family = SubgroupFamily::Mixed;
  label.a = parse_int(body.substr(0, dot), "label '" + text + "'");
  label.b = parse_int(body.substr(dot + 1), "label '" + text + "'");
  return label;
}

SymmetryPoint parse_point(const std::string& text, const SubgroupLattice& lattice) {
  if (text.rfind("mid(", 0) == 0) {
    if (text.back() != ')') throw ParseError("malformed point label: '" + text + "'");
    const std::string inner = text.substr(4, text.size() - 5);
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
      const auto comma = inner.find(',', start);
      if (comma == std::string::npos) {
        parts.push_back(inner.substr(start));
        break;
      }
      parts.push_back(inner.substr(start, comma - start));
      start = comma + 1;
    }
    if (parts.size() != 4) {
      throw ParseError("mid(...) takes (lower,upper,j,K): '" + text + "'");
    }
    const Subgroup lower = subgroup_from_label(lattice.n, parse_subgroup_label(parts[0]));
    const Subgroup upper = subgroup_from_label(lattice.n, parse_subgroup_label(parts[1]));
    const int j = parse_int(parts[2], "label '" + text + "'");
    const int grid_k = parse_int(parts[3], "label '" + text + "'");
    if (!lattice.covers_pair(lower, upper)) {
      throw ParseError("(" + parts[0] + ", " + parts[1] + ") is not a covering edge of Dih_" +
                       std::to_string(lattice.n));
    }
    try {
      return SymmetryPoint::interpolated(lower, upper, j, grid_k);
    } catch (const ConfigError& e) {
      throw ParseError(e.what());
    }
  }
  const Subgroup g = subgroup_from_label(lattice.n, parse_subgroup_label(text));
  return SymmetryPoint::pure(g);
}

}  // namespace symdesign
