#include "nilaff/workspace.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace nilaff {

namespace {

[[noreturn]] void parse_fail(int line, const std::string& what) {
  fail(ErrorKind::Parse, "line " + std::to_string(line) + ": " + what);
}

std::vector<std::string> tokenize(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::string strip(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

// Character scanner for nested vector/matrix literals.
struct Scanner {
  const std::string& s;
  size_t pos = 0;
  int line;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) parse_fail(line, std::string("expected '") + c + "'");
  }
  bool peek(char c) {
    skip_ws();
    return pos < s.size() && s[pos] == c;
  }
  Rat rational() {
    skip_ws();
    size_t start = pos;
    while (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) ||
                              s[pos] == '-' || s[pos] == '/' || s[pos] == '+'))
      ++pos;
    if (start == pos) parse_fail(line, "expected a rational number");
    return Rat::parse(s.substr(start, pos - start));
  }
  QVector vector() {
    expect('(');
    QVector out;
    if (!peek(')'))
      while (true) {
        out.push_back(rational());
        if (!eat(',')) break;
      }
    expect(')');
    return out;
  }
  QMatrix matrix() {
    expect('[');
    std::vector<QVector> rows;
    while (true) {
      expect('[');
      QVector row;
      if (!peek(']'))
        while (true) {
          row.push_back(rational());
          if (!eat(',')) break;
        }
      expect(']');
      rows.push_back(row);
      if (!eat(',')) break;
    }
    expect(']');
    return QMatrix::from_rows(rows);
  }
  void expect_word(const std::string& w) {
    skip_ws();
    if (s.compare(pos, w.size(), w) != 0) parse_fail(line, "expected '" + w + "'");
    pos += w.size();
  }
  void expect_end() {
    skip_ws();
    if (pos != s.size()) parse_fail(line, "trailing characters: '" + s.substr(pos) + "'");
  }
};

struct RawAlgebra {
  int line = 0;
  int dim = -1;
  std::vector<int> weights;
  std::vector<std::tuple<int, int, QVector>> brackets;
  std::vector<std::pair<std::string, std::string>> bracket_lines;  // lhs pair for dup detection
};

struct RawGroup {
  int line = 0;
  std::string algebra;
  std::vector<std::string> gen_names;
  std::vector<QVector> translations;
  std::vector<QMatrix> autos;
  std::vector<std::string> relator_lines;
  std::string holonomy_kind = "trivial";
  int holonomy_n = 0;
  std::vector<std::string> holonomy_names;
  std::vector<std::tuple<std::string, std::string, std::string>> holonomy_mult;
  std::vector<std::pair<std::string, std::string>> tag_lines;
  std::vector<std::string> series;
  bool properly_discontinuous = false;
};

struct RawHull {
  int line = 0;
  std::vector<std::string> torus_lines;
  std::vector<std::string> unipotent_lines;
  bool density_asserted = false;
};

struct RawMorphism {
  int line = 0;
  std::string source, target;
  std::vector<std::pair<std::string, std::string>> maps;   // gen -> word text
  std::vector<std::pair<std::string, std::string>> certs;  // target gen = word text
};

int parse_index(const std::string& tok, int line) {
  if (tok.size() < 2 || tok[0] != 'e') parse_fail(line, "expected a basis symbol e<k>");
  try {
    return std::stoi(tok.substr(1)) - 1;
  } catch (...) {
    parse_fail(line, "expected a basis symbol e<k>");
  }
}

QVector parse_bracket_rhs(const std::vector<std::string>& toks, size_t from, int dim, int line) {
  QVector out(dim);
  if (from < toks.size() && toks[from] == "0" && from + 1 == toks.size()) return out;
  Rat coeff(1);
  bool have_coeff = false;
  for (size_t i = from; i < toks.size(); ++i) {
    const std::string& t = toks[i];
    if (t == "+") {
      coeff = Rat(1);
      have_coeff = false;
      continue;
    }
    if (t == "-") {
      coeff = Rat(-1);
      have_coeff = true;
      continue;
    }
    if (t[0] == 'e') {
      int idx = parse_index(t, line);
      if (idx < 0 || idx >= dim) parse_fail(line, "basis index out of range");
      out[idx] += have_coeff ? coeff : Rat(1);
      coeff = Rat(1);
      have_coeff = false;
    } else {
      coeff = Rat::parse(t);
      have_coeff = true;
    }
  }
  return out;
}

Word parse_word(const std::string& text, const GroupPresentation& pres, int line) {
  Word w;
  for (const std::string& t : tokenize(text)) {
    if (t == "1") continue;
    size_t caret = t.find('^');
    std::string name = caret == std::string::npos ? t : t.substr(0, caret);
    int exp = 1;
    if (caret != std::string::npos) {
      try {
        exp = std::stoi(t.substr(caret + 1));
      } catch (...) {
        parse_fail(line, "bad exponent in '" + t + "'");
      }
    }
    int idx;
    try {
      idx = pres.gen_index(name);
    } catch (const Error&) {
      parse_fail(line, "unknown generator '" + name + "'");
    }
    w.letters.push_back({idx, exp});
  }
  return w;
}

std::string serialize_vector(const QVector& v) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i].str();
  os << ")";
  return os.str();
}

}  // namespace

const AlgebraRef& Workspace::algebra(const std::string& name) const {
  for (const auto& [n, a] : algebras)
    if (n == name) return a;
  fail(ErrorKind::Input, "unknown algebra '" + name + "'");
}

const GroupPresentation& Workspace::group(const std::string& name) const {
  for (const auto& [n, g] : groups)
    if (n == name) return g;
  fail(ErrorKind::Input, "unknown group '" + name + "'");
}

bool Workspace::has_group(const std::string& name) const {
  for (const auto& [n, g] : groups)
    if (n == name) return true;
  return false;
}

const GroupMorphism& Workspace::morphism(const std::string& name) const {
  for (const auto& m : morphisms)
    if (m.name == name) return m.value;
  fail(ErrorKind::Input, "unknown morphism '" + name + "'");
}

Workspace parse_workspace(const std::string& text) {
  std::vector<std::pair<std::string, RawAlgebra>> raw_algebras;
  std::vector<std::pair<std::string, RawGroup>> raw_groups;
  std::vector<std::pair<std::string, RawHull>> raw_hulls;
  std::vector<std::pair<std::string, RawMorphism>> raw_morphisms;

  std::string section_kind, section_name;
  std::istringstream in(text);
  std::string raw_line;
  int lineno = 0;

  auto current_algebra = [&]() -> RawAlgebra& {
    return raw_algebras.back().second;
  };
  auto current_group = [&]() -> RawGroup& { return raw_groups.back().second; };
  auto current_hull = [&]() -> RawHull& { return raw_hulls.back().second; };
  auto current_morphism = [&]() -> RawMorphism& { return raw_morphisms.back().second; };

  while (std::getline(in, raw_line)) {
    ++lineno;
    std::string line = strip(raw_line);
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = strip(line.substr(0, hash));
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') parse_fail(lineno, "unterminated section header");
      std::vector<std::string> toks = tokenize(line.substr(1, line.size() - 2));
      if (toks.size() != 2) parse_fail(lineno, "section header needs a kind and a name");
      section_kind = toks[0];
      section_name = toks[1];
      if (section_kind == "algebra")
        raw_algebras.push_back({section_name, [&]{ RawAlgebra r; r.line = lineno; return r; }()});
      else if (section_kind == "group")
        raw_groups.push_back({section_name, [&]{ RawGroup r; r.line = lineno; return r; }()});
      else if (section_kind == "hull")
        raw_hulls.push_back({section_name, [&]{ RawHull r; r.line = lineno; return r; }()});
      else if (section_kind == "morphism")
        raw_morphisms.push_back({section_name, [&]{ RawMorphism r; r.line = lineno; return r; }()});
      else
        parse_fail(lineno, "unknown section kind '" + section_kind + "'");
      continue;
    }
    if (section_kind.empty()) parse_fail(lineno, "content outside any section");

    std::vector<std::string> toks = tokenize(line);
    const std::string& head = toks[0];

    if (section_kind == "algebra") {
      RawAlgebra& a = current_algebra();
      if (head == "dim" && toks.size() >= 3 && toks[1] == "=") {
        a.dim = std::stoi(toks[2]);
      } else if (head == "weights" && toks.size() >= 2 && toks[1] == "=") {
        for (size_t i = 2; i < toks.size(); ++i) a.weights.push_back(std::stoi(toks[i]));
      } else if (head == "bracket") {
        if (toks.size() < 5 || toks[3] != "=") parse_fail(lineno, "bracket ei ej = ...");
        if (a.dim < 0) parse_fail(lineno, "dim must come before bracket lines");
        int i = parse_index(toks[1], lineno), j = parse_index(toks[2], lineno);
        a.brackets.push_back({i, j, parse_bracket_rhs(toks, 4, a.dim, lineno)});
      } else {
        parse_fail(lineno, "unknown algebra entry '" + head + "'");
      }
    } else if (section_kind == "group") {
      RawGroup& g = current_group();
      if (head == "algebra" && toks.size() == 3 && toks[1] == "=") {
        g.algebra = toks[2];
      } else if (head == "generator") {
        // generator NAME = (translation = (..); auto = [[..]])
        if (toks.size() < 3 || toks[2] != "=") parse_fail(lineno, "generator NAME = (...)");
        size_t eq = line.find('=');
        Scanner sc{line.substr(eq + 1), 0, lineno};
        sc.expect('(');
        sc.expect_word("translation");
        sc.expect('=');
        QVector tr = sc.vector();
        sc.expect(';');
        sc.expect_word("auto");
        sc.expect('=');
        QMatrix au = sc.matrix();
        sc.expect(')');
        sc.expect_end();
        g.gen_names.push_back(toks[1]);
        g.translations.push_back(tr);
        g.autos.push_back(au);
      } else if (head == "relator") {
        g.relator_lines.push_back(line.substr(std::string("relator").size()));
      } else if (head == "holonomy") {
        if (toks.size() >= 2 && toks[1] == "trivial") {
          g.holonomy_kind = "trivial";
        } else if (toks.size() >= 3 && toks[1] == "cyclic") {
          g.holonomy_kind = "cyclic";
          g.holonomy_n = std::stoi(toks[2]);
        } else if (toks.size() >= 2 && toks[1] == "elements") {
          g.holonomy_kind = "table";
          for (size_t i = 2; i < toks.size(); ++i) g.holonomy_names.push_back(toks[i]);
        } else if (toks.size() == 6 && toks[1] == "mult" && toks[4] == "=") {
          g.holonomy_mult.push_back({toks[2], toks[3], toks[5]});
        } else {
          parse_fail(lineno, "holonomy trivial | cyclic N | elements ... | mult a b = c");
        }
      } else if (head == "tag") {
        if (toks.size() != 4 || toks[2] != "=") parse_fail(lineno, "tag GEN = ELEMENT");
        g.tag_lines.push_back({toks[1], toks[3]});
      } else if (head == "series") {
        for (size_t i = 1; i < toks.size(); ++i) g.series.push_back(toks[i]);
      } else if (head == "assert") {
        if (toks.size() == 2 && toks[1] == "properly-discontinuous")
          g.properly_discontinuous = true;
        else
          parse_fail(lineno, "assert properly-discontinuous");
      } else {
        parse_fail(lineno, "unknown group entry '" + head + "'");
      }
    } else if (section_kind == "hull") {
      RawHull& h = current_hull();
      if (head == "torus") {
        h.torus_lines.push_back(line.substr(std::string("torus").size()));
      } else if (head == "unipotent") {
        h.unipotent_lines.push_back(line.substr(std::string("unipotent").size()));
      } else if (head == "density") {
        if (toks.size() == 3 && toks[1] == "=" && toks[2] == "asserted")
          h.density_asserted = true;
        else
          parse_fail(lineno, "density = asserted");
      } else {
        parse_fail(lineno, "unknown hull entry '" + head + "'");
      }
    } else if (section_kind == "morphism") {
      RawMorphism& m = current_morphism();
      if (head == "source" && toks.size() == 3 && toks[1] == "=") {
        m.source = toks[2];
      } else if (head == "target" && toks.size() == 3 && toks[1] == "=") {
        m.target = toks[2];
      } else if (head == "map") {
        size_t arrow = line.find("->");
        if (arrow == std::string::npos || toks.size() < 3) parse_fail(lineno, "map GEN -> WORD");
        m.maps.push_back({toks[1], strip(line.substr(arrow + 2))});
      } else if (head == "certificate") {
        size_t eq = line.find('=');
        if (eq == std::string::npos || toks.size() < 3)
          parse_fail(lineno, "certificate TARGET-GEN = WORD");
        m.certs.push_back({toks[1], strip(line.substr(eq + 1))});
      } else {
        parse_fail(lineno, "unknown morphism entry '" + head + "'");
      }
    }
  }

  // Build the workspace: algebras, then groups (with hulls), then morphisms.
  Workspace w;
  for (const auto& [name, ra] : raw_algebras) {
    if (ra.dim < 0) parse_fail(ra.line, "algebra '" + name + "' needs a dim entry");
    std::vector<int> weights = ra.weights.empty() ? std::vector<int>(ra.dim, 1) : ra.weights;
    if (static_cast<int>(weights.size()) != ra.dim)
      parse_fail(ra.line, "algebra '" + name + "': weights count != dim");
    AlgebraRef alg;
    try {
      alg = NilLieAlgebra::create(weights, ra.brackets);
    } catch (const Error& e) {
      fail(e.kind, "algebra '" + name + "': " + e.what());
    }
    bool duplicate = false;
    for (const auto& [n2, a2] : w.algebras) {
      if (n2 != name) continue;
      // re-declarations across files are fine as long as they agree
      if (!(*a2 == *alg)) fail(ErrorKind::Parse, "conflicting definitions of algebra '" + name + "'");
      duplicate = true;
    }
    if (!duplicate) w.algebras.push_back({name, alg});
  }

  for (const auto& [name, rg] : raw_groups) {
    if (w.has_group(name)) fail(ErrorKind::Parse, "duplicate group '" + name + "'");
    if (rg.algebra.empty()) parse_fail(rg.line, "group '" + name + "' needs an algebra entry");
    AlgebraRef alg = w.algebra(rg.algebra);

    FiniteGroup holonomy;
    if (rg.holonomy_kind == "trivial") {
      holonomy = FiniteGroup::trivial();
    } else if (rg.holonomy_kind == "cyclic") {
      holonomy = FiniteGroup::cyclic(rg.holonomy_n);
    } else {
      std::map<std::string, int> index;
      for (size_t i = 0; i < rg.holonomy_names.size(); ++i)
        index[rg.holonomy_names[i]] = static_cast<int>(i);
      int n = static_cast<int>(rg.holonomy_names.size());
      std::vector<std::vector<int>> table(n, std::vector<int>(n, -1));
      for (const auto& [a, b, c] : rg.holonomy_mult) {
        if (!index.count(a) || !index.count(b) || !index.count(c))
          parse_fail(rg.line, "holonomy mult references unknown element");
        table[index[a]][index[b]] = index[c];
      }
      for (const auto& row : table)
        for (int x : row)
          if (x < 0) parse_fail(rg.line, "holonomy multiplication table is incomplete");
      holonomy = FiniteGroup(rg.holonomy_names, table);
    }

    std::vector<AffTrans> gens;
    for (size_t i = 0; i < rg.gen_names.size(); ++i) {
      try {
        gens.push_back(AffTrans(GroupPoint(alg, rg.translations[i]),
                                LieMorphism(alg, alg, rg.autos[i])));
      } catch (const Error& e) {
        fail(e.kind, "group '" + name + "', generator '" + rg.gen_names[i] + "': " + e.what());
      }
    }
    std::vector<int> tags(gens.size(), holonomy.identity());
    for (const auto& [gen, elt] : rg.tag_lines) {
      auto e = holonomy.index_of(elt);
      if (!e) fail(ErrorKind::Parse, "group '" + name + "': unknown holonomy element '" + elt + "'");
      bool found = false;
      for (size_t i = 0; i < rg.gen_names.size(); ++i)
        if (rg.gen_names[i] == gen) {
          tags[i] = *e;
          found = true;
        }
      if (!found) fail(ErrorKind::Parse, "group '" + name + "': tag for unknown generator '" + gen + "'");
    }

    // temporary presentation without relators to be able to parse words
    GroupPresentation wordspace = GroupPresentation::create(
        alg, rg.gen_names, gens, {}, holonomy, tags, {}, false, DeclaredHull{});
    std::vector<Word> relators;
    for (const auto& rl : rg.relator_lines) relators.push_back(parse_word(rl, wordspace, rg.line));

    std::optional<DeclaredHull> hull;
    for (const auto& [hname, rh] : raw_hulls) {
      if (hname != name) continue;
      DeclaredHull h;
      for (const auto& t : rh.torus_lines) h.torus_words.push_back(parse_word(t, wordspace, rh.line));
      for (const auto& u : rh.unipotent_lines)
        h.unipotent_words.push_back(parse_word(u, wordspace, rh.line));
      h.density_asserted = rh.density_asserted;
      hull = h;
    }

    try {
      w.groups.push_back(
          {name, GroupPresentation::create(alg, rg.gen_names, gens, relators, holonomy, tags,
                                           rg.series, rg.properly_discontinuous, hull)});
      w.group_algebras.push_back({name, rg.algebra});
    } catch (const Error& e) {
      fail(e.kind, "group '" + name + "': " + e.what());
    }
  }

  for (const auto& [hname, rh] : raw_hulls)
    if (!w.has_group(hname))
      parse_fail(rh.line, "hull section for unknown group '" + hname + "'");

  for (const auto& [name, rm] : raw_morphisms) {
    GroupMorphism phi;
    phi.source = w.group(rm.source);
    phi.target = w.group(rm.target);
    std::vector<std::optional<Word>> images(phi.source.generators().size());
    for (const auto& [gen, word] : rm.maps) {
      int idx;
      try {
        idx = phi.source.gen_index(gen);
      } catch (const Error&) {
        fail(ErrorKind::Parse, "morphism '" + name + "': unknown source generator '" + gen + "'");
      }
      images[idx] = parse_word(word, phi.target, rm.line);
    }
    for (size_t i = 0; i < images.size(); ++i) {
      if (!images[i])
        fail(ErrorKind::Parse, "morphism '" + name + "': no image for generator '" +
                                   phi.source.gen_names()[i] + "'");
      phi.images.push_back(*images[i]);
    }
    phi.certificate.assign(phi.target.generators().size(), std::nullopt);
    for (const auto& [tgt, word] : rm.certs) {
      int idx;
      try {
        idx = phi.target.gen_index(tgt);
      } catch (const Error&) {
        fail(ErrorKind::Parse, "morphism '" + name + "': unknown target generator '" + tgt + "'");
      }
      phi.certificate[idx] = parse_word(word, phi.source, rm.line);
    }
    VerifyResult vr = verify_morphism(phi);
    if (!vr.ok)
      fail(ErrorKind::Input, "morphism '" + name + "': relator " +
                                 vr.violated.str(phi.source.gen_names()) +
                                 " is not preserved");
    w.morphisms.push_back({name, rm.source, rm.target, phi});
  }
  return w;
}

Workspace parse_workspace_files(const std::vector<std::string>& paths) {
  std::ostringstream all;
  for (const auto& p : paths) {
    std::ifstream in(p);
    if (!in) fail(ErrorKind::Input, "cannot open '" + p + "'");
    all << in.rdbuf() << "\n";
  }
  return parse_workspace(all.str());
}

std::string serialize_workspace(const Workspace& w) {
  std::ostringstream os;
  for (const auto& [name, alg] : w.algebras) {
    os << "[algebra " << name << "]\n";
    os << "dim = " << alg->dim() << "\n";
    os << "weights =";
    for (int x : alg->weights()) os << " " << x;
    os << "\n";
    for (int i = 0; i < alg->dim(); ++i)
      for (int j = i + 1; j < alg->dim(); ++j) {
        const QVector& c = alg->basis_bracket(i, j);
        if (is_zero(c)) continue;
        os << "bracket e" << i + 1 << " e" << j + 1 << " =";
        bool firstterm = true;
        for (int k = 0; k < alg->dim(); ++k) {
          if (c[k].is_zero()) continue;
          os << (firstterm ? " " : " + ");
          if (!c[k].is_one()) os << c[k].str() << " ";
          os << "e" << k + 1;
          firstterm = false;
        }
        os << "\n";
      }
    os << "\n";
  }
  for (size_t gi = 0; gi < w.groups.size(); ++gi) {
    const auto& [name, g] = w.groups[gi];
    os << "[group " << name << "]\n";
    os << "algebra = " << w.group_algebras[gi].second << "\n";
    const FiniteGroup& f = g.holonomy();
    if (f.order() == 1) {
      os << "holonomy trivial\n";
    } else {
      os << "holonomy elements";
      for (int i = 0; i < f.order(); ++i) os << " " << f.name(i);
      os << "\n";
      for (int a = 0; a < f.order(); ++a)
        for (int b = 0; b < f.order(); ++b)
          os << "holonomy mult " << f.name(a) << " " << f.name(b) << " = "
             << f.name(f.mul(a, b)) << "\n";
    }
    for (size_t i = 0; i < g.generators().size(); ++i) {
      os << "generator " << g.gen_names()[i] << " = (translation = "
         << serialize_vector(g.generators()[i].translation().coords)
         << "; auto = " << g.generators()[i].aut().matrix().str() << ")\n";
    }
    for (const Word& r : g.relators()) os << "relator " << r.str(g.gen_names()) << "\n";
    for (size_t i = 0; i < g.generators().size(); ++i)
      os << "tag " << g.gen_names()[i] << " = " << f.name(g.tags()[i]) << "\n";
    if (!g.series_names().empty()) {
      os << "series";
      for (const auto& s : g.series_names()) os << " " << s;
      os << "\n";
    }
    if (g.properly_discontinuous()) os << "assert properly-discontinuous\n";
    os << "\n";
    if (g.declared_hull()) {
      os << "[hull " << name << "]\n";
      for (const Word& t : g.declared_hull()->torus_words)
        os << "torus " << t.str(g.gen_names()) << "\n";
      for (const Word& u : g.declared_hull()->unipotent_words)
        os << "unipotent " << u.str(g.gen_names()) << "\n";
      if (g.declared_hull()->density_asserted) os << "density = asserted\n";
      os << "\n";
    }
  }
  for (const auto& m : w.morphisms) {
    os << "[morphism " << m.name << "]\n";
    os << "source = " << m.source << "\n";
    os << "target = " << m.target << "\n";
    for (size_t i = 0; i < m.value.images.size(); ++i)
      os << "map " << m.value.source.gen_names()[i] << " -> "
         << m.value.images[i].str(m.value.target.gen_names()) << "\n";
    for (size_t j = 0; j < m.value.certificate.size(); ++j)
      if (m.value.certificate[j])
        os << "certificate " << m.value.target.gen_names()[j] << " = "
           << m.value.certificate[j]->str(m.value.source.gen_names()) << "\n";
    os << "\n";
  }
  return os.str();
}

}  // namespace nilaff
