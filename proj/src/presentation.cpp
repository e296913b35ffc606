#include "cubsc/presentation.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace cubsc {

int Presentation::dart_of_letter(char c) const {
  char low = (c >= 'a' && c <= 'z') ? c : inv_letter(c);
  auto it = std::find(generators.begin(), generators.end(), low);
  if (it == generators.end())
    throw std::invalid_argument(std::string("unknown generator: ") + c);
  int k = static_cast<int>(it - generators.begin());
  return 2 * k + (c == low ? 0 : 1);
}

char Presentation::letter_of_dart(int d) const {
  char c = generators[d / 2];
  return (d & 1) ? inv_letter(c) : c;
}

std::vector<int> Presentation::word_to_base_path(const std::string& w) const {
  std::vector<int> out;
  out.reserve(w.size());
  for (char c : w) out.push_back(dart_of_letter(c));
  return out;
}

std::string Presentation::base_path_to_word(const std::vector<int>& darts) const {
  std::string out;
  out.reserve(darts.size());
  for (int d : darts) out.push_back(letter_of_dart(d));
  return out;
}

std::vector<int> Presentation::cone_cycle_path(int i) const {
  const SquareComplex& y = cone(i);
  std::vector<int> out;
  for (int e = 0; e < y.n_edges(); ++e) out.push_back(2 * e);
  return out;
}

std::vector<int> Presentation::cone_path_image(int i,
                                               const std::vector<int>& darts) const {
  std::vector<int> out;
  out.reserve(darts.size());
  for (int d : darts) out.push_back(maps_[i].dart_map[d]);
  return out;
}

Presentation Presentation::classical(const std::vector<char>& gens,
                                     const std::vector<std::string>& rels) {
  Presentation p;
  p.cls = PresentationClass::Classical;
  p.generators = gens;
  p.relators = rels;
  p.base_ = std::make_unique<SquareComplex>();
  p.base_->add_vertex();
  for (std::size_t k = 0; k < gens.size(); ++k) p.base_->add_edge(0, 0);
  for (const std::string& r : rels) {
    auto y = std::make_unique<SquareComplex>();
    int n = static_cast<int>(r.size());
    for (int v = 0; v < n; ++v) y->add_vertex();
    for (int v = 0; v < n; ++v) y->add_edge(v, (v + 1) % n);
    p.cones_.push_back(std::move(y));
  }
  for (std::size_t i = 0; i < rels.size(); ++i) {
    ComplexMorphism m;
    m.source = p.cones_[i].get();
    m.target = p.base_.get();
    const std::string& r = rels[i];
    m.vertex_map.assign(r.size(), 0);
    m.dart_map.resize(2 * r.size());
    for (std::size_t j = 0; j < r.size(); ++j) {
      int img = p.dart_of_letter(r[j]);
      m.dart_map[2 * j] = img;
      m.dart_map[2 * j + 1] = img ^ 1;
    }
    p.maps_.push_back(std::move(m));
  }
  p.validate(0);
  return p;
}

Presentation Presentation::square(SquareComplex base,
                                  std::vector<SquareComplex> cones,
                                  std::vector<std::vector<int>> vertex_maps,
                                  std::vector<std::vector<int>> dart_maps,
                                  std::vector<std::vector<int>> square_maps) {
  Presentation p;
  p.cls = PresentationClass::Square;
  p.base_ = std::make_unique<SquareComplex>(std::move(base));
  for (auto& c : cones)
    p.cones_.push_back(std::make_unique<SquareComplex>(std::move(c)));
  for (std::size_t i = 0; i < p.cones_.size(); ++i) {
    ComplexMorphism m;
    m.source = p.cones_[i].get();
    m.target = p.base_.get();
    m.vertex_map = std::move(vertex_maps[i]);
    m.dart_map = std::move(dart_maps[i]);
    m.square_map = std::move(square_maps[i]);
    p.maps_.push_back(std::move(m));
  }
  p.validate(0);
  return p;
}

void Presentation::validate(int line) {
  using PE = ParseError;
  if (auto err = base_->structural_error())
    throw PE(PE::Validation, line, "base complex: " + *err);
  for (int i = 0; i < n_cones(); ++i) {
    if (auto err = cones_[i]->structural_error())
      throw PE(PE::Validation, line,
               "cone Y" + std::to_string(i + 1) + ": " + *err);
    if (!cones_[i]->connected())
      throw PE(PE::Validation, line,
               "cone Y" + std::to_string(i + 1) + " is not connected");
  }
  if (cls == PresentationClass::Classical) {
    for (std::size_t i = 0; i < relators.size(); ++i) {
      if (relators[i].empty())
        throw PE(PE::Validation, line, "empty relator");
      if (!is_cyclically_reduced(relators[i]))
        throw PE(PE::Validation, line,
                 "relator " + relators[i] + " is not cyclically reduced");
    }
  }
  for (int i = 0; i < n_cones(); ++i) {
    Verdict v = check_local_isometry(maps_[i]);
    if (!v.ok)
      throw PE(PE::Validation, line,
               "cone Y" + std::to_string(i + 1) +
                   " is not a local isometry: " + v.violations.front());
    // A cone isomorphic onto the whole base is a degenerate presentation.
    const ComplexMorphism& m = maps_[i];
    if (m.source->n_vertices == base_->n_vertices &&
        m.source->n_darts() == base_->n_darts() &&
        m.source->squares.size() == base_->squares.size()) {
      std::vector<char> vhit(base_->n_vertices, 0), dhit(base_->n_darts(), 0);
      for (int x : m.vertex_map) vhit[x] = 1;
      for (int x : m.dart_map) dhit[x] = 1;
      bool onto = std::all_of(vhit.begin(), vhit.end(), [](char c) { return c; }) &&
                  std::all_of(dhit.begin(), dhit.end(), [](char c) { return c; });
      if (onto)
        throw PE(PE::Validation, line,
                 "cone Y" + std::to_string(i + 1) + " covers the whole base");
    }
  }
}

namespace {

struct Line {
  int number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> out;
  std::istringstream in(text);
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    Line line{number, {}};
    std::string tok;
    while (ls >> tok) line.tokens.push_back(tok);
    if (!line.tokens.empty()) out.push_back(std::move(line));
  }
  return out;
}

int parse_int(const std::string& tok, int line) {
  try {
    std::size_t pos = 0;
    int v = std::stoi(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParseError(ParseError::Syntax, line, "expected integer, got '" + tok + "'");
  }
}

Presentation parse_classical(const std::vector<Line>& lines) {
  using PE = ParseError;
  std::vector<char> gens;
  std::vector<std::string> rels;
  bool seen_gens = false;
  for (const Line& ln : lines) {
    const auto& t = ln.tokens;
    if (t[0] == "gens") {
      if (seen_gens) throw PE(PE::Syntax, ln.number, "duplicate gens line");
      seen_gens = true;
      if (t.size() < 2) throw PE(PE::Syntax, ln.number, "gens line needs names");
      for (std::size_t k = 1; k < t.size(); ++k) {
        if (t[k].size() != 1 || t[k][0] < 'a' || t[k][0] > 'z')
          throw PE(PE::Syntax, ln.number,
                   "generator must be a single lowercase letter: " + t[k]);
        if (std::find(gens.begin(), gens.end(), t[k][0]) != gens.end())
          throw PE(PE::Syntax, ln.number, "duplicate generator " + t[k]);
        gens.push_back(t[k][0]);
      }
    } else if (t[0] == "rel") {
      if (!seen_gens) throw PE(PE::Syntax, ln.number, "rel before gens");
      std::string w;
      for (std::size_t k = 1; k < t.size(); ++k) w += t[k];
      if (w.empty()) throw PE(PE::Syntax, ln.number, "empty rel line");
      if (!is_word(w))
        throw PE(PE::Syntax, ln.number, "relator is not a word: " + w);
      for (char c : w) {
        char low = (c >= 'a' && c <= 'z') ? c : inv_letter(c);
        if (std::find(gens.begin(), gens.end(), low) == gens.end())
          throw PE(PE::Syntax, ln.number,
                   std::string("relator uses undeclared generator ") + c);
      }
      rels.push_back(w);
    } else {
      throw PE(PE::Syntax, ln.number, "unexpected token '" + t[0] + "'");
    }
  }
  if (!seen_gens) throw PE(PE::Syntax, 1, "missing gens line");
  return Presentation::classical(gens, rels);
}

Presentation parse_square(const std::vector<Line>& lines) {
  using PE = ParseError;
  struct RawComplex {
    int vertices = -1;
    std::vector<std::pair<int, int>> edges;
    std::vector<std::array<int, 4>> squares;
    int line = 0;
  };
  struct RawMap {
    std::vector<std::pair<int, int>> vertex_rows, dart_rows, square_rows;
    int line = 0;
  };
  RawComplex base;
  std::vector<RawComplex> cones;
  std::vector<RawMap> maps;
  enum Section { None, BaseSec, ConeSec, MapSec } section = None;
  int current = -1;

  auto parse_cone_index = [&](const std::string& name, int line) {
    if (name.size() < 2 || name[0] != 'Y')
      throw PE(PE::Syntax, line, "expected cone name Y<k>, got " + name);
    int idx = parse_int(name.substr(1), line);
    if (idx < 1) throw PE(PE::Syntax, line, "cone indices start at 1");
    return idx - 1;
  };

  for (const Line& ln : lines) {
    const auto& t = ln.tokens;
    if (t[0] == "[complex" || t[0] == "[cone" || t[0] == "[map") {
      if (t.size() != 2 || t[1].empty() || t[1].back() != ']')
        throw PE(PE::Syntax, ln.number, "malformed section header");
      std::string name = t[1].substr(0, t[1].size() - 1);
      if (t[0] == "[complex") {
        if (name != "X") throw PE(PE::Syntax, ln.number, "base must be named X");
        section = BaseSec;
        base.line = ln.number;
      } else {
        int idx = parse_cone_index(name, ln.number);
        if (t[0] == "[cone") {
          if (idx != static_cast<int>(cones.size()))
            throw PE(PE::Syntax, ln.number, "cones must appear in order Y1, Y2, ...");
          cones.emplace_back();
          cones.back().line = ln.number;
          section = ConeSec;
        } else {
          if (idx >= static_cast<int>(cones.size()))
            throw PE(PE::Syntax, ln.number, "map for undeclared cone " + name);
          if (idx >= static_cast<int>(maps.size())) maps.resize(idx + 1);
          maps[idx].line = ln.number;
          section = MapSec;
        }
        current = idx;
      }
      continue;
    }
    if (section == None)
      throw PE(PE::Syntax, ln.number, "content before any section header");
    if (section == BaseSec || section == ConeSec) {
      RawComplex& rc = (section == BaseSec) ? base : cones[current];
      if (t[0] == "vertices" && t.size() == 2) {
        rc.vertices = parse_int(t[1], ln.number);
      } else if (t[0] == "edge" && t.size() == 3) {
        rc.edges.emplace_back(parse_int(t[1], ln.number), parse_int(t[2], ln.number));
      } else if (t[0] == "square" && t.size() == 5) {
        rc.squares.push_back({parse_int(t[1], ln.number), parse_int(t[2], ln.number),
                              parse_int(t[3], ln.number), parse_int(t[4], ln.number)});
      } else {
        throw PE(PE::Syntax, ln.number, "unexpected row '" + t[0] + "'");
      }
    } else {
      RawMap& rm = maps[current];
      if (t.size() != 3)
        throw PE(PE::Syntax, ln.number, "map rows are '<kind> <src> <dst>'");
      auto row = std::make_pair(parse_int(t[1], ln.number), parse_int(t[2], ln.number));
      if (t[0] == "vertex")
        rm.vertex_rows.push_back(row);
      else if (t[0] == "dart")
        rm.dart_rows.push_back(row);
      else if (t[0] == "square")
        rm.square_rows.push_back(row);
      else
        throw PE(PE::Syntax, ln.number, "unexpected map row '" + t[0] + "'");
    }
  }
  if (base.vertices < 0) throw PE(PE::Syntax, 1, "missing [complex X] section");
  if (maps.size() != cones.size())
    throw PE(PE::Syntax, 1, "every cone needs a [map] section");

  auto build = [](const RawComplex& rc) {
    SquareComplex c;
    c.n_vertices = rc.vertices;
    for (auto [u, v] : rc.edges) {
      if (u < 0 || u >= rc.vertices || v < 0 || v >= rc.vertices)
        throw PE(PE::Validation, rc.line, "edge endpoint out of range");
      c.add_edge(u, v);
    }
    for (const auto& q : rc.squares) c.add_square(q);
    return c;
  };
  SquareComplex X = build(base);
  std::vector<SquareComplex> Ys;
  for (auto& rc : cones) Ys.push_back(build(rc));

  std::vector<std::vector<int>> vmaps, dmaps, smaps;
  for (std::size_t i = 0; i < cones.size(); ++i) {
    const RawMap& rm = maps[i];
    std::vector<int> vm(Ys[i].n_vertices, -1);
    std::vector<int> dm(Ys[i].n_darts(), -1);
    std::vector<int> sm(Ys[i].squares.size(), -1);
    for (auto [s, d] : rm.vertex_rows) {
      if (s < 0 || s >= Ys[i].n_vertices)
        throw PE(PE::Validation, rm.line, "vertex map row out of range");
      vm[s] = d;
    }
    for (auto [s, d] : rm.dart_rows) {
      if (s < 0 || s >= Ys[i].n_darts() || (s & 1))
        throw PE(PE::Validation, rm.line, "dart map rows use even source darts");
      if (d < 0 || d >= X.n_darts())
        throw PE(PE::Validation, rm.line, "dart image out of range");
      dm[s] = d;
      dm[s ^ 1] = d ^ 1;
    }
    for (auto [s, d] : rm.square_rows) {
      if (s < 0 || s >= static_cast<int>(Ys[i].squares.size()))
        throw PE(PE::Validation, rm.line, "square map row out of range");
      sm[s] = d;
    }
    if (std::find(vm.begin(), vm.end(), -1) != vm.end())
      throw PE(PE::Validation, rm.line, "vertex map is not total");
    if (std::find(dm.begin(), dm.end(), -1) != dm.end())
      throw PE(PE::Validation, rm.line, "dart map is not total");
    if (std::find(sm.begin(), sm.end(), -1) != sm.end())
      throw PE(PE::Validation, rm.line, "square map is not total");
    vmaps.push_back(std::move(vm));
    dmaps.push_back(std::move(dm));
    smaps.push_back(std::move(sm));
  }
  return Presentation::square(std::move(X), std::move(Ys), std::move(vmaps),
                              std::move(dmaps), std::move(smaps));
}

}  // namespace

Presentation parse_presentation(const std::string& text) {
  auto lines = tokenize(text);
  if (lines.empty()) throw ParseError(ParseError::Syntax, 1, "empty presentation");
  if (lines.front().tokens[0] == "gens") return parse_classical(lines);
  return parse_square(lines);
}

Presentation parse_presentation_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_presentation(buf.str());
}

}  // namespace cubsc
