#pragma once

// Line-oriented text formats and CSV writers. Blank lines and text after '#'
// are ignored; every diagnostic names the line and the field.

#include "formspec/errors.hpp"
#include "formspec/flat_manifold.hpp"
#include "formspec/flat_spectra.hpp"
#include "formspec/localization.hpp"
#include "formspec/product_spectra.hpp"
#include "formspec/sparse_operator.hpp"
#include "formspec/warped.hpp"
#include "formspec/weyl.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace formspec {

inline std::string format_real(double x, int digits = 17) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

inline std::string csv_real(double x) { return format_real(x, 12); }

struct TextLine {
  int number = 0;
  std::vector<std::string> tokens;
};

class LineSource {
 public:
  LineSource(std::istream& in, std::string source) : source_(std::move(source)) {
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
      ++number;
      if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
      std::istringstream ss(raw);
      TextLine line{number, {}};
      for (std::string tok; ss >> tok;) line.tokens.push_back(tok);
      if (!line.tokens.empty()) lines_.push_back(std::move(line));
    }
  }

  bool done() const { return pos_ >= lines_.size(); }
  const TextLine& peek() const { return lines_[pos_]; }
  const TextLine& next() {
    if (done()) fail(last_line(), "input", "unexpected end of input");
    return lines_[pos_++];
  }
  int last_line() const { return lines_.empty() ? 0 : lines_[std::min(pos_, lines_.size()) - (pos_ > 0 ? 1 : 0)].number; }

  [[noreturn]] void fail(int line, std::string_view field, std::string_view message) const {
    throw InputError(source_ + ":" + std::to_string(line) + ": field '" + std::string(field) + "': " +
                     std::string(message));
  }

  double real(const TextLine& l, std::size_t i, std::string_view field) const {
    const std::string& t = token(l, i, field);
    if (t == "inf") return std::numeric_limits<double>::infinity();
    double v = 0.0;
    const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || p != t.data() + t.size()) fail(l.number, field, "'" + t + "' is not a number");
    return v;
  }

  std::int64_t integer(const TextLine& l, std::size_t i, std::string_view field) const {
    const std::string& t = token(l, i, field);
    std::int64_t v = 0;
    const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || p != t.data() + t.size()) fail(l.number, field, "'" + t + "' is not an integer");
    return v;
  }

  // Accepts "p/q" or a decimal.
  double rational(const TextLine& l, std::size_t i, std::string_view field) const {
    const std::string& t = token(l, i, field);
    const auto slash = t.find('/');
    if (slash == std::string::npos) return real(l, i, field);
    std::int64_t num = 0, den = 0;
    const auto [p1, e1] = std::from_chars(t.data(), t.data() + slash, num);
    const auto [p2, e2] = std::from_chars(t.data() + slash + 1, t.data() + t.size(), den);
    if (e1 != std::errc() || e2 != std::errc() || p1 != t.data() + slash || p2 != t.data() + t.size() || den == 0)
      fail(l.number, field, "'" + t + "' is not a rational p/q");
    return static_cast<double>(num) / static_cast<double>(den);
  }

  void expect_count(const TextLine& l, std::size_t count, std::string_view field) const {
    if (l.tokens.size() != count + 1)
      fail(l.number, field, "expected " + std::to_string(count) + " values, found " +
                                std::to_string(l.tokens.size() - 1));
  }

  const std::string& source() const { return source_; }

 private:
  const std::string& token(const TextLine& l, std::size_t i, std::string_view field) const {
    if (i >= l.tokens.size()) fail(l.number, field, "missing value");
    return l.tokens[i];
  }

  std::string source_;
  std::vector<TextLine> lines_;
  std::size_t pos_ = 0;
};

inline std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return in;
}

// ---- flat manifolds -------------------------------------------------------
//
//   dimension 3
//   scale 1                       (optional)
//   max_group_order 48            (optional)
//   basis 1 0 0 0 1 0 0 0 1       (row-major; columns are generators)
//   element
//   rotation 1 0 0 0 -1 0 0 0 -1  (row-major integers)
//   translation 1/2 1/2 0
//
// Elements generate the holonomy group. With `terminator` set, parsing stops
// at a line holding that single keyword (consumed).

inline FlatManifold parse_flat_manifold(LineSource& src, std::string_view terminator = {}) {
  int n = 0;
  double scale = 1.0;
  std::size_t max_order = FlatManifoldOptions{}.max_group_order;
  std::optional<Matrix> basis;
  std::vector<HolonomyElement> generators;
  std::vector<int> element_lines;
  int first_line = src.done() ? 0 : src.peek().number;
  bool terminated = false;
  while (!src.done()) {
    const TextLine& l = src.next();
    const std::string& key = l.tokens[0];
    if (!terminator.empty() && key == terminator && l.tokens.size() == 1) {
      terminated = true;
      break;
    }
    if (key == "dimension") {
      src.expect_count(l, 1, "dimension");
      const auto v = src.integer(l, 1, "dimension");
      if (v < 1 || v > 16) src.fail(l.number, "dimension", "must lie in 1..16");
      n = static_cast<int>(v);
    } else if (key == "scale") {
      src.expect_count(l, 1, "scale");
      scale = src.real(l, 1, "scale");
      if (!(scale > 0.0) || !std::isfinite(scale)) src.fail(l.number, "scale", "must be positive");
    } else if (key == "max_group_order") {
      src.expect_count(l, 1, "max_group_order");
      const auto v = src.integer(l, 1, "max_group_order");
      if (v < 1) src.fail(l.number, "max_group_order", "must be positive");
      max_order = static_cast<std::size_t>(v);
    } else if (key == "basis") {
      if (n == 0) src.fail(l.number, "basis", "dimension must come first");
      src.expect_count(l, static_cast<std::size_t>(n * n), "basis");
      Matrix b(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) b(i, j) = src.real(l, 1 + static_cast<std::size_t>(i * n + j), "basis");
      basis = b;
    } else if (key == "element") {
      if (n == 0) src.fail(l.number, "element", "dimension must come first");
      src.expect_count(l, 0, "element");
      generators.push_back({IntMatrix::Identity(n, n), Vector::Zero(n)});
      element_lines.push_back(l.number);
    } else if (key == "rotation" || key == "translation") {
      if (generators.empty()) src.fail(l.number, key, "must follow an 'element' line");
      auto& g = generators.back();
      if (key == "rotation") {
        src.expect_count(l, static_cast<std::size_t>(n * n), "rotation");
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) g.rotation(i, j) = src.integer(l, 1 + static_cast<std::size_t>(i * n + j), "rotation");
      } else {
        src.expect_count(l, static_cast<std::size_t>(n), "translation");
        for (int i = 0; i < n; ++i) g.translation(i) = src.rational(l, 1 + static_cast<std::size_t>(i), "translation");
      }
    } else {
      src.fail(l.number, key, "unknown keyword");
    }
  }
  if (!terminator.empty() && !terminated) src.fail(src.last_line(), std::string(terminator), "missing terminator");
  if (n == 0) src.fail(first_line, "dimension", "missing");
  if (!basis) basis = Matrix::Identity(n, n);
  try {
    return FlatManifold::generated_by(Lattice(*basis), generators, scale, FlatManifoldOptions{max_order});
  } catch (const InputError& e) {
    src.fail(element_lines.empty() ? first_line : element_lines.front(), "element", e.what());
  }
}

inline FlatManifold parse_flat_manifold(std::istream& in, std::string source = "<input>") {
  LineSource src(in, std::move(source));
  return parse_flat_manifold(src);
}

inline FlatManifold parse_flat_manifold_string(const std::string& text) {
  std::istringstream in(text);
  return parse_flat_manifold(in, "<string>");
}

// "catalog:<name>" or a file path.
inline FlatManifold load_flat_manifold(const std::string& where) {
  if (where.rfind("catalog:", 0) == 0) {
    const std::string name = where.substr(8);
    if (auto k = catalog::lookup(name)) return *k;
    throw InputError("unknown catalog manifold '" + name + "'");
  }
  auto in = open_input(where);
  return parse_flat_manifold(in, where);
}

inline std::string rational_text(double t) {
  for (int q = 1; q <= 1000; ++q) {
    const double p = std::round(t * q);
    if (std::abs(t * q - p) < 1e-12 * q) {
      if (q == 1) return std::to_string(static_cast<long long>(p));
      return std::to_string(static_cast<long long>(p)) + "/" + std::to_string(q);
    }
  }
  return format_real(t);
}

inline std::string emit_flat_manifold(const FlatManifold& k) {
  const int n = k.dimension();
  std::string s = "dimension " + std::to_string(n) + "\n";
  s += "scale " + format_real(k.scale()) + "\n";
  if (k.group_order() > FlatManifoldOptions{}.max_group_order)
    s += "max_group_order " + std::to_string(k.group_order()) + "\n";
  s += "basis";
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s += " " + format_real(k.lattice().basis()(i, j));
  s += "\n";
  for (const auto& g : k.holonomy()) {
    if (g.is_identity_rotation() && g.translation.isZero()) continue;
    s += "element\nrotation";
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) s += " " + std::to_string(g.rotation(i, j));
    s += "\ntranslation";
    for (int i = 0; i < n; ++i) s += " " + rational_text(g.translation(i));
    s += "\n";
  }
  return s;
}

// Same lattice, scale and holonomy group (as a set).
inline bool same_manifold(const FlatManifold& a, const FlatManifold& b) {
  if (a.dimension() != b.dimension() || a.scale() != b.scale() || a.group_order() != b.group_order()) return false;
  if (a.lattice().basis() != b.lattice().basis()) return false;
  for (const auto& g : a.holonomy()) {
    const bool found = std::any_of(b.holonomy().begin(), b.holonomy().end(),
                                   [&](const HolonomyElement& h) { return same_element(g, h); });
    if (!found) return false;
  }
  return true;
}

// ---- warped models --------------------------------------------------------
//
//   name my-model                 (optional)
//   base line | half-line
//   factor
//     label hw
//     manifold catalog hantzsche-wendt
//     manifold power hantzsche-wendt 3
//     manifold sphere 2
//     manifold inline  ... flat manifold lines ...  end
//     warp constant 2
//     warp power -1 1             (exponent, matching radius)
//     warp custom
//       sample r f f' f''
//     end
//   end
//   reference 2 empty | reference 0 interval 0 | reference 5 unknown

namespace detail {

inline WarpFunction parse_custom_warp(LineSource& src) {
  std::vector<double> r, f, d1, d2;
  while (true) {
    const TextLine& l = src.next();
    if (l.tokens[0] == "end" && l.tokens.size() == 1) break;
    if (l.tokens[0] != "sample") src.fail(l.number, l.tokens[0], "expected 'sample' or 'end'");
    src.expect_count(l, 4, "sample");
    r.push_back(src.real(l, 1, "sample"));
    f.push_back(src.real(l, 2, "sample"));
    d1.push_back(src.real(l, 3, "sample"));
    d2.push_back(src.real(l, 4, "sample"));
  }
  try {
    return WarpFunction::custom(r, f, d1, d2);
  } catch (const InputError& e) {
    src.fail(src.last_line(), "warp", e.what());
  }
}

inline WarpedFactor parse_factor(LineSource& src, int start_line) {
  std::string label;
  std::optional<std::variant<FlatManifold, RoundSphere>> manifold;
  std::optional<WarpFunction> warp;
  while (true) {
    const TextLine& l = src.next();
    const std::string& key = l.tokens[0];
    if (key == "end" && l.tokens.size() == 1) break;
    if (key == "label") {
      src.expect_count(l, 1, "label");
      label = l.tokens[1];
    } else if (key == "manifold") {
      if (l.tokens.size() < 2) src.fail(l.number, "manifold", "missing kind");
      const std::string& kind = l.tokens[1];
      if (kind == "catalog" || kind == "power") {
        if (l.tokens.size() != (kind == "catalog" ? 3u : 4u)) src.fail(l.number, "manifold", "wrong number of values");
        auto k = catalog::lookup(l.tokens[2]);
        if (!k) src.fail(l.number, "manifold", "unknown catalog manifold '" + l.tokens[2] + "'");
        if (kind == "power") {
          const auto copies = src.integer(l, 3, "manifold");
          if (copies < 1 || copies > 4) src.fail(l.number, "manifold", "power must lie in 1..4");
          manifold = power(*k, static_cast<int>(copies));
        } else {
          manifold = *k;
        }
        if (label.empty()) label = l.tokens[2];
      } else if (kind == "sphere") {
        src.expect_count(l, 2, "manifold");
        const auto d = src.integer(l, 2, "manifold");
        if (d < 1 || d > 16) src.fail(l.number, "manifold", "sphere dimension must lie in 1..16");
        manifold = RoundSphere{static_cast<int>(d)};
      } else if (kind == "inline") {
        src.expect_count(l, 1, "manifold");
        manifold = parse_flat_manifold(src, "end");
      } else {
        src.fail(l.number, "manifold", "unknown kind '" + kind + "'");
      }
    } else if (key == "warp") {
      if (l.tokens.size() < 2) src.fail(l.number, "warp", "missing kind");
      const std::string& kind = l.tokens[1];
      try {
        if (kind == "constant") {
          src.expect_count(l, 2, "warp");
          warp = WarpFunction::constant(src.real(l, 2, "warp"));
        } else if (kind == "power") {
          src.expect_count(l, 3, "warp");
          warp = WarpFunction::power_law(src.real(l, 2, "warp"), src.real(l, 3, "warp"));
        } else if (kind == "custom") {
          src.expect_count(l, 1, "warp");
          warp = parse_custom_warp(src);
        } else {
          src.fail(l.number, "warp", "unknown kind '" + kind + "'");
        }
      } catch (const InputError& e) {
        const std::string what = e.what();
        if (what.rfind(src.source() + ":", 0) == 0) throw;
        src.fail(l.number, "warp", what);
      }
    } else {
      src.fail(l.number, key, "unknown keyword in factor");
    }
  }
  if (!manifold) src.fail(start_line, "manifold", "factor has no manifold");
  if (!warp) src.fail(start_line, "warp", "factor has no warp");
  if (label.empty()) label = "factor";
  return WarpedFactor{label, *manifold, *warp};
}

}  // namespace detail

inline WarpedModel parse_warped_model(std::istream& in, std::string source = "<input>") {
  LineSource src(in, std::move(source));
  WarpedModel m;
  std::vector<std::pair<int, int>> reference_lines;
  while (!src.done()) {
    const TextLine& l = src.next();
    const std::string& key = l.tokens[0];
    if (key == "name") {
      src.expect_count(l, 1, "name");
      m.name = l.tokens[1];
    } else if (key == "base") {
      src.expect_count(l, 1, "base");
      if (l.tokens[1] == "line") m.base = WarpedBase::Line;
      else if (l.tokens[1] == "half-line") m.base = WarpedBase::HalfLine;
      else src.fail(l.number, "base", "expected 'line' or 'half-line'");
    } else if (key == "factor") {
      src.expect_count(l, 0, "factor");
      if (m.factors.size() == 2) src.fail(l.number, "factor", "at most two factors");
      m.factors.push_back(detail::parse_factor(src, l.number));
    } else if (key == "reference") {
      if (l.tokens.size() < 3) src.fail(l.number, "reference", "expected a degree and a verdict");
      const auto k = src.integer(l, 1, "reference");
      const std::string& kind = l.tokens[2];
      std::optional<SpectrumVerdict> v;
      if (kind == "empty" && l.tokens.size() == 3) v = SpectrumVerdict::empty();
      else if (kind == "unknown") v = SpectrumVerdict::unknown(l.tokens.size() > 3 ? l.tokens[3] : "");
      else if (kind == "interval" && l.tokens.size() == 4) {
        const double b = src.real(l, 3, "reference");
        if (!(b >= 0.0)) src.fail(l.number, "reference", "interval bottom must be nonnegative");
        v = SpectrumVerdict::interval(b);
      } else src.fail(l.number, "reference", "expected 'empty', 'interval <bottom>' or 'unknown'");
      if (!m.reference_verdicts.emplace(static_cast<int>(k), *v).second)
        src.fail(l.number, "reference", "degree listed twice");
      reference_lines.emplace_back(static_cast<int>(k), l.number);
    } else {
      src.fail(l.number, key, "unknown keyword");
    }
  }
  if (m.factors.empty()) src.fail(src.last_line(), "factor", "model has no factors");
  for (const auto& [k, line] : reference_lines)
    if (k < 0 || k > m.total_dimension()) src.fail(line, "reference", "degree out of range");
  m.validate();
  return m;
}

inline WarpedModel parse_warped_model_string(const std::string& text) {
  std::istringstream in(text);
  return parse_warped_model(in, "<string>");
}

// "catalog:<name>" or a file path.
inline WarpedModel load_warped_model(const std::string& where) {
  if (where.rfind("catalog:", 0) == 0) {
    const std::string name = where.substr(8);
    if (auto m = catalog::lookup_warped(name)) return *m;
    throw InputError("unknown catalog model '" + name + "'");
  }
  auto in = open_input(where);
  return parse_warped_model(in, where);
}

inline std::string emit_warped_model(const WarpedModel& m) {
  std::string s;
  if (!m.name.empty()) s += "name " + m.name + "\n";
  s += std::string("base ") + (m.base == WarpedBase::Line ? "line" : "half-line") + "\n";
  for (const auto& f : m.factors) {
    s += "factor\nlabel " + f.label + "\n";
    if (f.is_sphere()) {
      s += "manifold sphere " + std::to_string(f.dimension()) + "\n";
    } else {
      s += "manifold inline\n" + emit_flat_manifold(*f.flat()) + "end\n";
    }
    const auto& w = f.warp;
    switch (w.kind()) {
      case WarpFunction::Kind::Constant: s += "warp constant " + format_real(w.constant_value()) + "\n"; break;
      case WarpFunction::Kind::PowerLaw:
        s += "warp power " + format_real(w.exponent()) + " " + format_real(w.matching_radius()) + "\n";
        break;
      case WarpFunction::Kind::Custom:
        s += "warp custom\n";
        for (std::size_t i = 0; i < w.sample_radii().size(); ++i)
          s += "sample " + format_real(w.sample_radii()[i]) + " " + format_real(w.sample_values()[i]) + " " +
               format_real(w.sample_first()[i]) + " " + format_real(w.sample_second()[i]) + "\n";
        s += "end\n";
        break;
    }
    s += "end\n";
  }
  for (const auto& [k, v] : m.reference_verdicts) {
    s += "reference " + std::to_string(k) + " " + v.kind_name();
    if (v.is_interval()) s += " " + format_real(v.bottom());
    if (v.is_unknown() && !v.reason().empty() && v.reason().find_first_of(" \t#") == std::string::npos)
      s += " " + v.reason();
    s += "\n";
  }
  return s;
}

inline bool same_model(const WarpedModel& a, const WarpedModel& b) {
  if (a.name != b.name || a.base != b.base || a.factors.size() != b.factors.size()) return false;
  for (std::size_t j = 0; j < a.factors.size(); ++j) {
    const auto& x = a.factors[j];
    const auto& y = b.factors[j];
    if (x.label != y.label || !(x.warp == y.warp) || x.is_sphere() != y.is_sphere()) return false;
    if (x.is_sphere() ? x.dimension() != y.dimension() : !same_manifold(*x.flat(), *y.flat())) return false;
  }
  if (a.reference_verdicts.size() != b.reference_verdicts.size()) return false;
  for (const auto& [k, v] : a.reference_verdicts) {
    const auto it = b.reference_verdicts.find(k);
    if (it == b.reference_verdicts.end() || !v.matches(it->second, 0.0)) return false;
  }
  return true;
}

// ---- operators and vectors ------------------------------------------------
//
//   dimension N
//   row col value        (0-based; both triangles listed)

inline SparseOperator parse_operator(std::istream& in, std::string source = "<input>") {
  LineSource src(in, std::move(source));
  if (src.done()) throw InputError(src.source() + ": empty operator file");
  const TextLine& head = src.next();
  if (head.tokens[0] != "dimension") src.fail(head.number, "dimension", "the first line must be 'dimension N'");
  src.expect_count(head, 1, "dimension");
  const auto n = src.integer(head, 1, "dimension");
  if (n < 1) src.fail(head.number, "dimension", "must be positive");
  std::vector<Triplet> entries;
  while (!src.done()) {
    const TextLine& l = src.next();
    if (l.tokens.size() != 3) src.fail(l.number, "entry", "expected 'row col value'");
    const auto i = src.integer(l, 0, "row");
    const auto j = src.integer(l, 1, "col");
    const double v = src.real(l, 2, "value");
    if (i < 0 || i >= n) src.fail(l.number, "row", "index out of range");
    if (j < 0 || j >= n) src.fail(l.number, "col", "index out of range");
    if (!std::isfinite(v)) src.fail(l.number, "value", "not finite");
    entries.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j), v});
  }
  try {
    return SparseOperator::from_triplets(static_cast<std::size_t>(n), std::move(entries));
  } catch (const InputError& e) {
    throw InputError(src.source() + ": " + e.what());
  }
}

inline SparseOperator load_operator(const std::string& path) {
  auto in = open_input(path);
  return parse_operator(in, path);
}

inline std::string emit_operator(const SparseOperator& h) {
  std::string s = "dimension " + std::to_string(h.dimension()) + "\n";
  for (const auto& t : h.triplets())
    s += std::to_string(t.row) + " " + std::to_string(t.col) + " " + format_real(t.value) + "\n";
  return s;
}

// One entry per line: "re" or "re im".
inline ComplexVector parse_vector(std::istream& in, std::string source = "<input>") {
  LineSource src(in, std::move(source));
  ComplexVector v;
  while (!src.done()) {
    const TextLine& l = src.next();
    if (l.tokens.size() > 2) src.fail(l.number, "entry", "expected 're' or 're im'");
    const double re = src.real(l, 0, "re");
    const double im = l.tokens.size() == 2 ? src.real(l, 1, "im") : 0.0;
    v.emplace_back(re, im);
  }
  if (v.empty()) throw InputError(src.source() + ": empty vector file");
  return v;
}

inline ComplexVector load_vector(const std::string& path) {
  auto in = open_input(path);
  return parse_vector(in, path);
}

// ---- CSV reports ----------------------------------------------------------

inline std::string spectra_csv(const std::vector<SpectrumTable>& tables) {
  std::string s = "degree,eigenvalue,multiplicity\n";
  for (const auto& t : tables)
    for (const auto& r : t.rows)
      s += std::to_string(t.degree) + "," + csv_real(r.eigenvalue) + "," + std::to_string(r.multiplicity) + "\n";
  return s;
}

inline std::string betti_csv(const std::vector<std::int64_t>& betti) {
  std::string s = "degree,betti\n";
  for (std::size_t l = 0; l < betti.size(); ++l) s += std::to_string(l) + "," + std::to_string(betti[l]) + "\n";
  return s;
}

inline std::string alpha_csv(const std::vector<AlphaValue>& values) {
  std::string s = "k,alpha,branch,witness_degree\n";
  for (std::size_t k = 0; k < values.size(); ++k)
    s += std::to_string(k) + "," + csv_real(values[k].value) + "," + branch_name(values[k].branch) + "," +
         std::to_string(values[k].witness_degree) + "\n";
  return s;
}

inline std::string verdict_text(const SpectrumVerdict& v) {
  return v.is_interval() ? "interval" : v.kind_name();
}

inline std::string classification_csv(const std::vector<ClassificationReport>& reports) {
  std::string s = "k,verdict,bottom,witness,reference,reference_bottom,discrepancy\n";
  for (const auto& r : reports) {
    s += std::to_string(r.degree) + "," + verdict_text(r.verdict) + "," +
         (r.verdict.is_interval() ? csv_real(r.verdict.bottom()) : "") + "," + r.witness + ",";
    if (r.reference) {
      s += verdict_text(*r.reference) + "," + (r.reference->is_interval() ? csv_real(r.reference->bottom()) : "");
    } else {
      s += ",";
    }
    s += std::string(",") + (r.discrepancy ? "1" : "0") + "\n";
  }
  return s;
}

inline std::string certificates_csv(const std::vector<WeylCertificate>& certs) {
  std::string s = "lambda,alpha,q1,q2,delta,distance_bound,classical_residual,verdict\n";
  for (const auto& c : certs)
    s += csv_real(c.lambda) + "," + csv_real(c.alpha) + "," + csv_real(c.q1) + "," + csv_real(c.q2) + "," +
         csv_real(c.delta) + "," + csv_real(c.distance_bound) + "," + csv_real(c.classical_residual) + "," +
         verdict_name(c.verdict) + "\n";
  return s;
}

struct LocalizationRow {
  double radius = 0;
  double center = 0;
  double bottom_eigenvalue = 0;
  double localized_quotient = 0;
  double measured_constant = 0;
};

inline std::string localization_csv(const std::vector<LocalizationRow>& rows) {
  std::string s = "radius,center,bottom_eigenvalue,localized_quotient,C_measured\n";
  for (const auto& r : rows)
    s += csv_real(r.radius) + "," + csv_real(r.center) + "," + csv_real(r.bottom_eigenvalue) + "," +
         csv_real(r.localized_quotient) + "," + csv_real(r.measured_constant) + "\n";
  return s;
}

// Plot series; no rendering.
inline std::string emit_plot_data(const std::vector<WeylCertificate>& certs) {
  std::string s = "lambda,delta,distance_bound\n";
  for (const auto& c : certs) s += csv_real(c.lambda) + "," + csv_real(c.delta) + "," + csv_real(c.distance_bound) + "\n";
  return s;
}

inline std::string emit_plot_data(const std::vector<ChannelOperator>& channels) {
  std::string s = "channel,r,V\n";
  for (const auto& c : channels) {
    const std::string name = c.label.describe();
    for (std::size_t i = 0; i < c.r.size(); ++i) s += name + "," + csv_real(c.r[i]) + "," + csv_real(c.potential[i]) + "\n";
  }
  return s;
}

}  // namespace formspec
