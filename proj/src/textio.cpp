#include "aqftop/textio.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace aqftop {
namespace {

struct Token {
  std::string text;
  int column = 0;
};

struct Line {
  int number = 0;
  std::string text;  // comment stripped
  std::vector<Token> tokens;
};

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> out;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string raw(text.substr(pos, end - pos));
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    Line line{number, raw, {}};
    for (std::size_t i = 0; i < raw.size();) {
      if (std::isspace(static_cast<unsigned char>(raw[i]))) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < raw.size() && !std::isspace(static_cast<unsigned char>(raw[j]))) ++j;
      line.tokens.push_back({raw.substr(i, j - i), static_cast<int>(i) + 1});
      i = j;
    }
    if (!line.tokens.empty()) out.push_back(std::move(line));
    pos = end + 1;
  }
  return out;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ArgumentError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool is_identifier(const std::string& s) {
  if (s.empty() || s == "i") return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '.';
  });
}

class LineParser {
 public:
  LineParser(std::string source, const Line& line) : source_(std::move(source)), line_(line) {}

  [[noreturn]] void fail(std::size_t token, const std::string& what) const {
    const int col = token < line_.tokens.size() ? line_.tokens[token].column
                                                : static_cast<int>(line_.text.size()) + 1;
    throw ParseError(source_, line_.number, col, what);
  }

  const std::string& word(std::size_t k) const {
    if (k >= line_.tokens.size()) fail(k, "missing token after '" + line_.tokens.back().text + "'");
    return line_.tokens[k].text;
  }

  std::string name(std::size_t k) const {
    const std::string& w = word(k);
    if (!is_identifier(w)) fail(k, "expected a name, found '" + w + "'");
    return w;
  }

  void literal(std::size_t k, std::string_view expected) const {
    if (word(k) != expected) fail(k, "expected '" + std::string(expected) + "', found '" + word(k) + "'");
  }

  void arity(std::size_t n) const {
    if (line_.tokens.size() > n) fail(n, "unexpected '" + line_.tokens[n].text + "'");
    if (line_.tokens.size() < n) fail(line_.tokens.size(), "line is incomplete");
  }

  /// Everything after token k as raw text with its position.
  SourceText rest(std::size_t k) const {
    if (k >= line_.tokens.size()) fail(k, "missing right-hand side");
    const int col = line_.tokens[k].column;
    return {line_.text.substr(col - 1), source_, line_.number, col};
  }

  std::size_t size() const { return line_.tokens.size(); }

 private:
  std::string source_;
  const Line& line_;
};

}  // namespace

CategoryData parse_category(std::string_view text, const std::string& source) {
  CategoryData data;
  bool seen_category = false, seen_objects = false, seen_mode = false;
  for (const Line& line : split_lines(text)) {
    LineParser p(source, line);
    const std::string& kw = p.word(0);
    if (kw == "category") {
      if (seen_category) p.fail(0, "duplicate 'category' line");
      p.arity(2);
      data.name = p.name(1);
      seen_category = true;
    } else if (kw == "objects") {
      if (seen_objects) p.fail(0, "duplicate 'objects' line");
      for (std::size_t k = 1; k < p.size(); ++k) data.objects.push_back(p.name(k));
      seen_objects = true;
    } else if (kw == "morphism") {
      p.literal(2, ":");
      p.literal(4, "->");
      p.arity(6);
      data.morphisms.push_back({p.name(1), p.name(3), p.name(5)});
    } else if (kw == "compose") {
      p.literal(3, "=");
      p.arity(5);
      data.compositions.push_back({p.name(1), p.name(2), p.name(4)});
    } else if (kw == "identity") {
      p.arity(3);
      data.explicit_identities = true;
      data.identities.emplace_back(p.name(1), p.name(2));
    } else if (kw == "orth") {
      p.arity(3);
      data.orth.emplace_back(p.name(1), p.name(2));
    } else if (kw == "orthogonality") {
      if (seen_mode) p.fail(0, "duplicate 'orthogonality' line");
      p.arity(2);
      if (p.word(1) == "generators") {
        data.orth_generators = true;
      } else if (p.word(1) == "closed") {
        data.orth_generators = false;
      } else {
        p.fail(1, "expected 'generators' or 'closed'");
      }
      seen_mode = true;
    } else {
      p.fail(0, "unknown directive '" + kw + "'");
    }
  }
  if (!seen_category) throw ParseError(source, 1, 1, "missing 'category' line");
  if (!seen_objects) throw ParseError(source, 1, 1, "missing 'objects' line");
  return data;
}

CategoryData read_category_file(const std::filesystem::path& path) {
  return parse_category(read_text(path), path.string());
}

Vec parse_vector(const SourceText& src, const std::vector<std::string>& basis) {
  Vec out(basis.size());
  const std::string& s = src.text;
  auto fail = [&](std::size_t offset, const std::string& what) {
    throw ParseError(src.source, src.line, src.column + static_cast<int>(offset), what);
  };
  // Split at top-level signs that start a new term.
  std::vector<std::pair<std::size_t, std::size_t>> terms;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (s[k] == '(') ++depth;
    if (s[k] == ')') --depth;
    if (depth < 0) fail(k, "unbalanced ')'");
    if (depth == 0 && (s[k] == '+' || s[k] == '-') && k > start) {
      bool blank = true;
      for (std::size_t j = start; j < k; ++j) blank = blank && std::isspace(static_cast<unsigned char>(s[j]));
      if (!blank) {
        terms.emplace_back(start, k);
        start = k;
      }
    }
  }
  if (depth != 0) fail(s.size(), "unbalanced '('");
  terms.emplace_back(start, s.size());

  for (auto [b, e] : terms) {
    std::string term = s.substr(b, e - b);
    std::replace(term.begin(), term.end(), '*', ' ');
    std::size_t first = term.find_first_not_of(" \t");
    if (first == std::string::npos) fail(b, "empty term");
    bool negative = false;
    if (term[first] == '+' || term[first] == '-') {
      negative = term[first] == '-';
      term[first] = ' ';
    }
    std::istringstream words(term);
    std::vector<std::string> w;
    for (std::string x; words >> x;) w.push_back(x);
    if (w.empty()) fail(b, "sign without a term");
    if (w.size() == 1 && w[0] == "0") continue;
    const std::string label = w.back();
    w.pop_back();
    auto it = std::find(basis.begin(), basis.end(), label);
    if (it == basis.end()) fail(b, "unknown basis element '" + label + "'");
    GaussC coef(1);
    if (!w.empty()) {
      std::string c;
      for (const auto& x : w) c += x;
      if (c.size() >= 2 && c.front() == '(' && c.back() == ')') c = c.substr(1, c.size() - 2);
      try {
        coef = parse_scalar(c);
      } catch (const Error& err) {
        fail(b, std::string("bad coefficient: ") + err.what());
      }
    }
    if (negative) coef = GaussC(0) - coef;
    out[it - basis.begin()] += coef;
  }
  return out;
}

const Monoid* AlgebraFile::find_monoid(const std::string& name) const {
  for (const auto& m : monoids) {
    if (m.name == name) return &m;
  }
  return nullptr;
}

const NamedState* AlgebraFile::find_state(const std::string& name) const {
  for (const auto& s : states) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

namespace {

void merge_into(AlgebraFile& into, AlgebraFile&& from, const LineParser& at) {
  for (auto& m : from.monoids) {
    if (into.find_monoid(m.name)) at.fail(1, "imported monoid '" + m.name + "' is already defined");
    into.monoids.push_back(std::move(m));
  }
  for (auto& s : from.states) {
    if (into.find_state(s.name)) at.fail(1, "imported state '" + s.name + "' is already defined");
    into.states.push_back(std::move(s));
  }
  for (auto& a : from.assignments) into.assignments.push_back(std::move(a));
  for (auto& m : from.maps) into.maps.push_back(std::move(m));
}

AlgebraFile parse_algebra_impl(std::string_view text, const std::string& source,
                               const std::filesystem::path& base_dir,
                               std::set<std::filesystem::path>& open_files);

AlgebraFile read_algebra_impl(const std::filesystem::path& path, std::set<std::filesystem::path>& open_files) {
  const auto canonical = std::filesystem::weakly_canonical(path);
  if (!open_files.insert(canonical).second) throw ArgumentError("import cycle through " + path.string());
  AlgebraFile out = parse_algebra_impl(read_text(path), path.string(), path.parent_path(), open_files);
  open_files.erase(canonical);
  return out;
}

struct MonoidDraft {
  Monoid m;
  bool has_unit = false;
  bool has_basis = false;
  bool linear_star = false;
  std::vector<std::pair<std::size_t, std::size_t>> product_seen;
  std::vector<std::optional<Vec>> star_rows;
};

AlgebraFile parse_algebra_impl(std::string_view text, const std::string& source,
                               const std::filesystem::path& base_dir,
                               std::set<std::filesystem::path>& open_files) {
  AlgebraFile out;
  const std::vector<Line> lines = split_lines(text);
  enum class Block { None, Monoid, State, Map } block = Block::None;
  MonoidDraft draft;
  NamedState state;
  const Monoid* state_monoid = nullptr;
  std::set<std::string> state_seen;
  MapDecl map;

  auto index_of = [](const LineParser& p, std::size_t k, const std::vector<std::string>& basis) {
    const std::string& w = p.word(k);
    auto it = std::find(basis.begin(), basis.end(), w);
    if (it == basis.end()) p.fail(k, "unknown basis element '" + w + "'");
    return static_cast<std::size_t>(it - basis.begin());
  };

  for (const Line& line : lines) {
    LineParser p(source, line);
    const std::string& kw = p.word(0);
    if (block == Block::Monoid) {
      Monoid& m = draft.m;
      if (kw == "end") {
        p.arity(1);
        if (!draft.has_basis) p.fail(0, "monoid '" + m.name + "' has no basis");
        if (!draft.has_unit) p.fail(0, "monoid '" + m.name + "' has no unit");
        const std::size_t d = m.dim();
        for (auto& v : m.products) {
          if (v.empty()) {
            if (m.mode == CarrierMode::Set) p.fail(0, "set monoid '" + m.name + "' has an incomplete product table");
            v.assign(d, GaussC());
          }
        }
        const auto missing = std::count(draft.star_rows.begin(), draft.star_rows.end(), std::nullopt);
        if (missing != 0 && missing != static_cast<long>(d)) {
          p.fail(0, "star of '" + m.name + "' is given on some basis elements only");
        }
        if (missing == 0) {
          if (m.mode == CarrierMode::Set) p.fail(0, "set monoids carry the trivial involution");
          LinMap star(d, d, !draft.linear_star);
          for (std::size_t j = 0; j < d; ++j) {
            for (std::size_t r = 0; r < d; ++r) star(r, j) = (*draft.star_rows[j])[r];
          }
          m.star = std::move(star);
        } else if (draft.linear_star) {
          p.fail(0, "'involution linear' without star values");
        }
        out.monoids.push_back(std::move(m));
        block = Block::None;
      } else if (kw == "basis") {
        if (draft.has_basis) p.fail(0, "duplicate 'basis' line");
        for (std::size_t k = 1; k < p.size(); ++k) {
          const std::string b = p.name(k);
          if (std::find(m.basis.begin(), m.basis.end(), b) != m.basis.end()) p.fail(k, "duplicate basis element '" + b + "'");
          m.basis.push_back(b);
        }
        if (m.basis.empty()) p.fail(1, "empty basis");
        m.products.assign(m.dim() * m.dim(), Vec{});
        draft.star_rows.assign(m.dim(), std::nullopt);
        draft.has_basis = true;
      } else if (!draft.has_basis) {
        p.fail(0, "'basis' must come first in a monoid block");
      } else if (kw == "unit") {
        if (draft.has_unit) p.fail(0, "duplicate 'unit' line");
        m.unit = parse_vector(p.rest(1), m.basis);
        draft.has_unit = true;
      } else if (kw == "product") {
        p.literal(3, "=");
        const std::size_t a = index_of(p, 1, m.basis), b = index_of(p, 2, m.basis);
        Vec& slot = m.products[a * m.dim() + b];
        if (!slot.empty()) p.fail(1, "duplicate product " + m.basis[a] + " " + m.basis[b]);
        slot = parse_vector(p.rest(4), m.basis);
      } else if (kw == "star") {
        p.literal(2, "=");
        const std::size_t a = index_of(p, 1, m.basis);
        if (draft.star_rows[a]) p.fail(1, "duplicate star of " + m.basis[a]);
        draft.star_rows[a] = parse_vector(p.rest(3), m.basis);
      } else if (kw == "involution") {
        p.arity(2);
        if (p.word(1) == "linear") {
          draft.linear_star = true;
        } else if (p.word(1) != "antilinear") {
          p.fail(1, "expected 'linear' or 'antilinear'");
        }
      } else {
        p.fail(0, "unknown directive '" + kw + "' in monoid block");
      }
      continue;
    }
    if (block == Block::State) {
      if (kw == "end") {
        p.arity(1);
        out.states.push_back(std::move(state));
        block = Block::None;
        continue;
      }
      p.literal(1, "=");
      const std::size_t a = index_of(p, 0, state_monoid->basis);
      if (!state_seen.insert(p.word(0)).second) p.fail(0, "duplicate value for " + p.word(0));
      const SourceText rhs = p.rest(2);
      try {
        state.state.omega[a] = parse_scalar(rhs.text);
      } catch (const ArgumentError& err) {
        throw ParseError(source, line.number, rhs.column, err.what());
      }
      continue;
    }
    if (block == Block::Map) {
      if (kw == "end") {
        p.arity(1);
        out.maps.push_back(std::move(map));
        block = Block::None;
        continue;
      }
      p.literal(1, "=");
      for (const auto& [label, _] : map.rows) {
        if (label == p.word(0)) p.fail(0, "duplicate image of " + label);
      }
      map.rows.emplace_back(p.name(0), p.rest(2));
      continue;
    }
    if (kw == "monoid") {
      if (p.size() < 2 || p.size() > 3) p.arity(2);
      draft = MonoidDraft{};
      draft.m.name = p.name(1);
      if (out.find_monoid(draft.m.name)) p.fail(1, "duplicate monoid '" + draft.m.name + "'");
      if (p.size() == 3) {
        p.literal(2, "set");
        draft.m.mode = CarrierMode::Set;
      }
      block = Block::Monoid;
    } else if (kw == "state") {
      p.arity(4);
      p.literal(2, "on");
      state = NamedState{};
      state.name = p.name(1);
      if (out.find_state(state.name)) p.fail(1, "duplicate state '" + state.name + "'");
      state_monoid = out.find_monoid(p.word(3));
      if (!state_monoid) p.fail(3, "unknown monoid '" + p.word(3) + "'");
      if (state_monoid->mode != CarrierMode::Vec) p.fail(3, "states need a vector-mode monoid");
      state.state.algebra = *state_monoid;
      state.state.omega.assign(state_monoid->dim(), GaussC());
      state_seen.clear();
      block = Block::State;
    } else if (kw == "import") {
      p.arity(2);
      AlgebraFile sub = read_algebra_impl(base_dir / p.word(1), open_files);
      merge_into(out, std::move(sub), p);
    } else if (kw == "assign") {
      p.arity(3);
      SourceText monoid = p.rest(2);
      monoid.text = p.name(2);
      out.assignments.emplace_back(p.name(1), std::move(monoid));
    } else if (kw == "map") {
      p.arity(2);
      map = MapDecl{};
      map.morphism = p.name(1);
      map.where = p.rest(1);
      block = Block::Map;
    } else {
      p.fail(0, "unknown directive '" + kw + "'");
    }
  }
  if (block != Block::None) {
    throw ParseError(source, lines.empty() ? 1 : lines.back().number + 1, 1, "missing 'end'");
  }
  return out;
}

}  // namespace

AlgebraFile parse_algebra(std::string_view text, const std::string& source,
                          const std::filesystem::path& base_dir) {
  std::set<std::filesystem::path> open_files;
  return parse_algebra_impl(text, source, base_dir, open_files);
}

AlgebraFile read_algebra_file(const std::filesystem::path& path) {
  std::set<std::filesystem::path> open_files;
  return read_algebra_impl(path, open_files);
}

FunctorToMon resolve_functor(const AlgebraFile& file, const OrthCategory& cat) {
  auto at = [](const SourceText& s, const std::string& what) {
    return ParseError(s.source, s.line, s.column, what);
  };
  std::vector<const Monoid*> objects(cat.object_count(), nullptr);
  if (file.assignments.empty() && cat.object_count() == 1 && file.monoids.size() == 1) {
    objects[0] = &file.monoids[0];
  }
  for (const auto& [obj, monoid] : file.assignments) {
    ObjId x;
    try {
      x = cat.object_index(obj);
    } catch (const Error&) {
      throw at(monoid, "unknown object '" + obj + "'");
    }
    const Monoid* m = file.find_monoid(monoid.text);
    if (!m) throw at(monoid, "unknown monoid '" + monoid.text + "'");
    if (objects[x]) throw at(monoid, "object '" + obj + "' is assigned twice");
    objects[x] = m;
  }
  FunctorToMon f;
  for (ObjId x = 0; x < cat.object_count(); ++x) {
    if (!objects[x]) throw ValidationError("object " + cat.object_name(x) + " has no monoid assigned");
    f.objects.push_back(*objects[x]);
  }
  std::vector<const MapDecl*> decl(cat.morphism_count(), nullptr);
  for (const auto& m : file.maps) {
    MorId g;
    try {
      g = cat.morphism_index(m.morphism);
    } catch (const Error&) {
      throw at(m.where, "unknown morphism '" + m.morphism + "'");
    }
    if (decl[g]) throw at(m.where, "morphism '" + m.morphism + "' is mapped twice");
    decl[g] = &m;
  }
  for (MorId g = 0; g < cat.morphism_count(); ++g) {
    const Monoid& src = f.objects[cat.source(g)];
    const Monoid& tgt = f.objects[cat.target(g)];
    if (!decl[g]) {
      if (!cat.is_identity(g)) throw ValidationError("morphism " + cat.morphism_name(g) + " has no map");
      f.morphisms.push_back(LinMap::identity(src.dim()));
      continue;
    }
    LinMap mat(tgt.dim(), src.dim());
    std::vector<bool> seen(src.dim(), false);
    for (const auto& [label, rhs] : decl[g]->rows) {
      auto it = std::find(src.basis.begin(), src.basis.end(), label);
      if (it == src.basis.end()) throw at(rhs, "'" + label + "' is not a basis element of " + src.name);
      const std::size_t j = it - src.basis.begin();
      seen[j] = true;
      const Vec v = parse_vector(rhs, tgt.basis);
      for (std::size_t r = 0; r < tgt.dim(); ++r) mat(r, j) = v[r];
    }
    if (src.mode == CarrierMode::Set && std::count(seen.begin(), seen.end(), false) != 0) {
      throw at(decl[g]->where, "set map '" + decl[g]->morphism + "' is not defined everywhere");
    }
    f.morphisms.push_back(std::move(mat));
  }
  return f;
}

}  // namespace aqftop
