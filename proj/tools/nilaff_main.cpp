#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <random>
#include <sstream>

#include "nilaff/polymap.hpp"
#include "nilaff/workspace.hpp"

using namespace nilaff;

namespace {

// Key-value report. Text mode prints a one-line header first; kv mode prints
// only the pairs, so scripted output is a flat `key = value` list either way.
struct Report {
  std::string header;
  std::vector<std::pair<std::string, std::string>> lines;

  void add(const std::string& key, const std::string& value) { lines.push_back({key, value}); }
  void print(bool kv_mode) const {
    if (!kv_mode && !header.empty()) std::cout << header << "\n";
    for (const auto& [k, v] : lines) std::cout << k << " = " << v << "\n";
  }
  std::string value_of(const std::string& key) const {
    for (const auto& [k, v] : lines)
      if (k == key) return v;
    return "";
  }
};

int exit_code_for(const Error& e) {
  switch (e.kind) {
    case ErrorKind::Parse:
    case ErrorKind::Dimension:
      return 2;
    case ErrorKind::Scope:
      return 3;
    default:
      return 1;
  }
}

std::string bool_str(bool b) { return b ? "true" : "false"; }

std::string vec_str(const QVector& v) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i].str();
  os << ")";
  return os.str();
}

std::string poly_list_str(const std::vector<MultiPoly>& ps) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < ps.size(); ++i) os << (i ? ", " : "") << ps[i].str();
  os << ")";
  return os.str();
}

QVector parse_span_entry(const std::string& text, int dim) {
  // combination of basis symbols, e.g. "e2" or "e1 + 1/2 e3"
  QVector out(dim);
  Rat coeff(1);
  bool have_coeff = false, negate = false;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    if (tok == "+") {
      coeff = Rat(1);
      have_coeff = negate = false;
    } else if (tok == "-") {
      negate = true;
    } else if (tok[0] == 'e') {
      int idx = std::stoi(tok.substr(1)) - 1;
      if (idx < 0 || idx >= dim) fail(ErrorKind::Input, "basis index out of range in span");
      Rat c = have_coeff ? coeff : Rat(1);
      out[idx] += negate ? -c : c;
      coeff = Rat(1);
      have_coeff = negate = false;
    } else {
      coeff = Rat::parse(tok);
      have_coeff = true;
    }
  }
  return out;
}

Report report_translation_like(const Workspace& ws, const std::string& group) {
  const GroupPresentation& p = ws.group(group);
  TranslationLikeResult r = is_translation_like(p);
  Report rep;
  rep.header = "translation-like group=" + group;
  rep.add("result", bool_str(r.value));
  if (r.witness) rep.add("witness", r.witness->str());
  return rep;
}

Report report_hull(const Workspace& ws, const std::string& group) {
  const GroupPresentation& p = ws.group(group);
  HullReport h = check_hull_axioms(p, compute_closure(p));
  Report rep;
  rep.header = "hull group=" + group;
  rep.add("axiom1", h.density.pass ? "pass" : "fail");
  rep.add("axiom1.detail", h.density.detail);
  rep.add("axiom2", h.dimension.pass ? "pass" : "fail");
  rep.add("axiom2.detail", h.dimension.detail);
  rep.add("axiom3", h.centralizer.pass ? "pass" : "fail");
  rep.add("axiom3.detail", h.centralizer.detail);
  rep.add("result", h.all_pass() ? "pass" : "fail");
  return rep;
}

Report report_hirsch(const Workspace& ws, const std::string& group) {
  const GroupPresentation& p = ws.group(group);
  std::optional<int> h = hirsch_length(p);
  if (!h) fail(ErrorKind::Input, "Hirsch length undetermined");
  Report rep;
  rep.header = "hirsch group=" + group;
  rep.add("result", std::to_string(*h));
  return rep;
}

Report report_crystallographic(const Workspace& ws, const std::string& group) {
  Report rep;
  rep.header = "crystallographic group=" + group;
  rep.add("result", bool_str(is_crystallographic(ws.group(group))));
  return rep;
}

Report report_fixed_points(const Workspace& ws, const std::string& group) {
  const GroupPresentation& p = ws.group(group);
  FixedCoset c = fixed_points_reductive(p.algebra(), p.generators(), LeviKind::Finite);
  Report rep;
  rep.header = "fixed-points group=" + group;
  rep.add("basepoint", vec_str(c.basepoint.coords));
  rep.add("subalgebra-dim", std::to_string(c.subalgebra_basis.size()));
  for (size_t i = 0; i < c.subalgebra_basis.size(); ++i)
    rep.add("subalgebra." + std::to_string(i + 1), vec_str(c.subalgebra_basis[i]));
  return rep;
}

Report report_restrict(const Workspace& ws, const std::string& group,
                       const std::string& span_text, const std::string& point_text) {
  const GroupPresentation& p = ws.group(group);
  int dim = p.algebra()->dim();
  std::vector<QVector> span;
  std::string entry;
  std::istringstream in(span_text);
  while (std::getline(in, entry, ';')) {
    bool blank = entry.find_first_not_of(" \t") == std::string::npos;
    if (!blank) span.push_back(parse_span_entry(entry, dim));
  }
  QVector point(dim);
  {
    std::string cleaned = point_text;
    for (char& c : cleaned)
      if (c == '(' || c == ')' || c == ',') c = ' ';
    std::istringstream pin(cleaned);
    std::string tok;
    size_t i = 0;
    while (pin >> tok) {
      if (i >= point.size()) fail(ErrorKind::Input, "too many coordinates in --point");
      point[i++] = Rat::parse(tok);
    }
    if (i != point.size()) fail(ErrorKind::Input, "wrong coordinate count in --point");
  }
  RestrictedAction r = restrict_action(p, span, GroupPoint(p.algebra(), point));
  Report rep;
  rep.header = "restrict group=" + group;
  rep.add("subalgebra-dim", std::to_string(r.m_model.basis.size()));
  for (size_t i = 0; i < p.generators().size(); ++i)
    rep.add("generator " + p.gen_names()[i], r.restricted.generators()[i].str());
  return rep;
}

Report report_extend(const Workspace& ws, const std::string& morphism) {
  const GroupMorphism& phi = ws.morphism(morphism);
  HullMorphism h = extend_to_hulls(phi);
  Report rep;
  rep.header = "extend morphism=" + morphism;
  rep.add("unipotent-part", h.unipotent_part.matrix().str());
  for (size_t i = 0; i < h.levi_elements.size(); ++i)
    rep.add("levi " + phi.source.holonomy().name(h.levi_elements[i]), h.levi_images[i].str());
  rep.add("verified", "extension determined and equivariant on generators");
  return rep;
}

Report report_induce(const Workspace& ws, const std::string& morphism) {
  const GroupMorphism& phi = ws.morphism(morphism);
  InduceResult r = induce_affine_map(phi);
  int checked = 0;
  std::mt19937 rng(2024);
  for (int i = 0; i < 100; ++i) {
    Word w;
    int len = 1 + static_cast<int>(rng() % 5);
    for (int j = 0; j < len; ++j)
      w = w.concat(Word::gen(static_cast<int>(rng() % phi.source.generators().size()),
                             rng() % 2 ? 1 : -1));
    if (!intertwines_on_word(phi, r.alpha, w))
      fail(ErrorKind::Internal, "intertwining failed on a random word");
    ++checked;
  }
  Report rep;
  rep.header = "induce morphism=" + morphism;
  rep.add("translation", vec_str(r.alpha.translation.coords));
  rep.add("morphism-matrix", r.alpha.morphism.matrix().str());
  rep.add("verified", "intertwining verified on all generators");
  rep.add("verified-random-words", std::to_string(checked));
  return rep;
}

Report report_classify(const Workspace& ws, const std::string& morphism) {
  const GroupMorphism& phi = ws.morphism(morphism);
  ClassifyResult c = classify_affine_maps(phi);
  Report rep;
  rep.header = "classify morphism=" + morphism;
  rep.add("delta", c.delta.matrix().str());
  rep.add("coset-basepoint", vec_str(c.translations.basepoint.coords));
  rep.add("coset-dim", std::to_string(c.translations.subalgebra_basis.size()));
  for (size_t i = 0; i < c.translations.subalgebra_basis.size(); ++i)
    rep.add("coset-basis." + std::to_string(i + 1), vec_str(c.translations.subalgebra_basis[i]));
  return rep;
}

Report report_make_translation_like(const Workspace& ws, const std::string& group) {
  const GroupPresentation& p = ws.group(group);
  TranslationLikeModel m = make_translation_like(p);
  Report rep;
  rep.header = "make-translation-like group=" + group;
  rep.add("radical-dim", std::to_string(m.u_model.basis.size()));
  rep.add("basepoint", vec_str(m.basepoint.coords));
  rep.add("chart", poly_list_str(m.chart.components));
  if (m.chart.has_inverse()) rep.add("chart-inverse", poly_list_str(*m.chart.inverse_components));
  for (size_t i = 0; i < m.presentation.generators().size(); ++i)
    rep.add("generator " + p.gen_names()[i], m.presentation.generators()[i].str());
  rep.add("translation-like", bool_str(is_translation_like(m.presentation).value));
  return rep;
}

Report report_induce_poly(const Workspace& ws, const std::string& morphism) {
  const GroupMorphism& phi = ws.morphism(morphism);
  PolyIntertwiner r = induce_polynomial_map(phi);
  Report rep;
  rep.header = "induce-poly morphism=" + morphism;
  rep.add("map", poly_list_str(r.map.components));
  rep.add("degree", std::to_string(r.map.degree()));
  rep.add("verified", "intertwining verified symbolically on all generators");
  return rep;
}

// Canned per-fixture regression checks for the shipped corpus.
struct CorpusCheck {
  std::string name;
  bool ok;
  std::string detail;
};

std::vector<CorpusCheck> run_fixture_checks(const std::string& file, const Workspace& ws) {
  std::vector<CorpusCheck> out;
  auto check = [&](const std::string& name, bool ok, const std::string& detail = "") {
    out.push_back({name, ok, detail});
  };
  auto expect_throw = [&](const std::string& name, ErrorKind kind, auto&& fn) {
    try {
      fn();
      check(name, false, "expected an error");
    } catch (const Error& e) {
      check(name, e.kind == kind, e.what());
    }
  };

  std::string stem = std::filesystem::path(file).stem().string();
  if (stem == "z2-standard") {
    check("translation-like", is_translation_like(ws.group("z2")).value);
    check("crystallographic", is_crystallographic(ws.group("z2")));
    check("hirsch=2", hirsch_length(ws.group("z2")) == 2);
    check("hull", check_hull_axioms(ws.group("z2"), compute_closure(ws.group("z2"))).all_pass());
  } else if (stem == "polyZ2") {
    const GroupPresentation& p = ws.group("polyZ2");
    TranslationLikeResult tl = is_translation_like(p);
    check("translation-like=false", !tl.value);
    check("witness-present", tl.witness.has_value());
    check("crystallographic", is_crystallographic(p));
    check("hull", check_hull_axioms(p, compute_closure(p)).all_pass());
    TranslationLikeModel m = make_translation_like(p);
    bool straightened = true;
    for (const auto& g : m.presentation.generators())
      straightened = straightened && g.aut().matrix().is_identity();
    check("make-translation-like-straightens", straightened);
  } else if (stem == "klein") {
    const GroupPresentation& k = ws.group("klein");
    check("translation-like", is_translation_like(k).value);
    check("hirsch=2", hirsch_length(k) == 2);
    check("hull", check_hull_axioms(k, compute_closure(k)).all_pass());
    check("i(b)-not-unipotent", !k.lin()->is_unipotent(k.generators()[1]));
    check("i(a)-unipotent", k.lin()->is_unipotent(k.generators()[0]));
    check("i(b^2)-unipotent", k.lin()->is_unipotent(k.evaluate(Word::gen(1, 2))));
    expect_throw("extend-phi-rejected", ErrorKind::Input,
                 [&] { extend_to_hulls(ws.morphism("phi")); });
    check("extend-quot",
          extend_to_hulls(ws.morphism("quot")).unipotent_part.matrix() ==
              QMatrix(1, 2, {Rat(0), Rat(2)}));
    InduceResult r = induce_affine_map(ws.morphism("phi"));
    check("induce-delta", r.alpha.morphism.matrix() == QMatrix(2, 1, {Rat(0), Rat(1, 2)}));
    ClassifyResult c = classify_affine_maps(ws.morphism("phi"));
    check("classify-coset-line", c.translations.subalgebra_basis.size() == 1 &&
                                     c.translations.subalgebra_basis[0] ==
                                         QVector{Rat(0), Rat(1)});
  } else if (stem == "heisenberg") {
    const GroupPresentation& h = ws.group("heis");
    check("translation-like", is_translation_like(h).value);
    check("crystallographic", is_crystallographic(h));
    check("hirsch=3", hirsch_length(h) == 3);
    check("hull", check_hull_axioms(h, compute_closure(h)).all_pass());
  } else if (stem == "semisimple-z") {
    const GroupPresentation& z = ws.group("zsemi");
    check("hirsch=1", hirsch_length(z) == 1);
    HullReport r = check_hull_axioms(z, compute_closure(z));
    check("hull-axiom2-fails", !r.dimension.pass, r.dimension.detail);
    check("hull-axiom3-fails", !r.centralizer.pass, r.centralizer.detail);
    expect_throw("crystallographic-needs-pd", ErrorKind::Scope,
                 [&] { is_crystallographic(z); });
  } else {
    check("known-fixture", false, "no canned checks for '" + stem + "'");
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations with NIL-affine actions of virtually polycyclic groups"};
  app.require_subcommand(1);

  std::vector<std::string> files;
  std::string format = "text";
  app.add_option("-f,--file", files, "workspace file (repeatable)");
  app.add_option("--format", format, "output format: text | kv")
      ->check(CLI::IsMember({"text", "kv"}));

  std::string group, morphism, span_text, point_text, expect, corpus_dir;
  std::string src_check, tgt_check;
  bool dump = false;

  CLI::App* cmd_check = app.add_subcommand("check", "load and validate a workspace");
  cmd_check->add_flag("--dump", dump, "print the canonical serialization");

  auto add_group_cmd = [&](const std::string& name, const std::string& desc) {
    CLI::App* c = app.add_subcommand(name, desc);
    c->add_option("--group", group, "group name")->required();
    c->add_option("--expect", expect, "expected result; exit 1 on mismatch");
    return c;
  };
  auto add_morphism_cmd = [&](const std::string& name, const std::string& desc) {
    CLI::App* c = app.add_subcommand(name, desc);
    c->add_option("--morphism", morphism, "morphism name")->required();
    c->add_option("--source", src_check, "optional source group cross-check");
    c->add_option("--target", tgt_check, "optional target group cross-check");
    return c;
  };

  add_group_cmd("translation-like", "decide the translation-like property");
  add_group_cmd("hull", "check the three algebraic-hull axioms");
  add_group_cmd("hirsch", "Hirsch length");
  add_group_cmd("crystallographic", "decide the crystallographic criterion");
  add_group_cmd("fixed-points", "fixed coset of the (finite) group of generators");
  add_group_cmd("make-translation-like", "orbit chart and straightened presentation");
  CLI::App* cmd_restrict = app.add_subcommand("restrict", "restrict an action to a coset");
  cmd_restrict->add_option("--group", group)->required();
  cmd_restrict->add_option("--span", span_text, "subalgebra span, entries separated by ';'")
      ->required();
  cmd_restrict->add_option("--point", point_text, "basepoint, e.g. (0, 0)")->required();

  add_morphism_cmd("extend", "extend a surjective morphism to the hulls");
  add_morphism_cmd("induce", "affine map intertwining the actions");
  add_morphism_cmd("classify", "all affine maps realizing the morphism");
  add_morphism_cmd("induce-poly", "polynomial map intertwining the actions");

  CLI::App* cmd_corpus = app.add_subcommand("corpus", "run the shipped fixture checks");
  cmd_corpus->add_option("--dir", corpus_dir, "fixture directory");

  CLI11_PARSE(app, argc, argv);
  bool kv = format == "kv";

  try {
    if (app.got_subcommand("corpus")) {
      if (corpus_dir.empty()) {
        const char* env = std::getenv("NILAFF_CORPUS_DIR");
        corpus_dir = env ? env : "fixtures";
      }
      std::vector<std::string> fixture_files;
      for (const auto& entry : std::filesystem::directory_iterator(corpus_dir))
        if (entry.path().extension() == ".naf") fixture_files.push_back(entry.path().string());
      std::sort(fixture_files.begin(), fixture_files.end());
      if (fixture_files.empty()) fail(ErrorKind::Input, "no .naf fixtures in " + corpus_dir);
      bool all_ok = true;
      for (const auto& file : fixture_files) {
        Workspace ws = parse_workspace_files({file});
        std::vector<CorpusCheck> checks = run_fixture_checks(file, ws);
        bool ok = true;
        for (const auto& c : checks) ok = ok && c.ok;
        all_ok = all_ok && ok;
        std::cout << std::filesystem::path(file).stem().string() << ": "
                  << (ok ? "PASS" : "FAIL") << " (" << checks.size() << " checks)\n";
        for (const auto& c : checks)
          if (!c.ok) std::cout << "  failed: " << c.name << " " << c.detail << "\n";
      }
      return all_ok ? 0 : 1;
    }

    if (files.empty()) fail(ErrorKind::Input, "no workspace files given (use --file)");
    Workspace ws = parse_workspace_files(files);

    if (app.got_subcommand("check")) {
      if (dump) {
        std::cout << serialize_workspace(ws);
      } else {
        Report rep;
        rep.header = "check";
        rep.add("algebras", std::to_string(ws.algebras.size()));
        rep.add("groups", std::to_string(ws.groups.size()));
        rep.add("morphisms", std::to_string(ws.morphisms.size()));
        rep.print(kv);
      }
      return 0;
    }

    if (!morphism.empty()) {
      const GroupMorphism& phi = ws.morphism(morphism);
      if (!src_check.empty() && !(ws.group(src_check) == phi.source))
        fail(ErrorKind::Input, "--source does not match the morphism's source group");
      if (!tgt_check.empty() && !(ws.group(tgt_check) == phi.target))
        fail(ErrorKind::Input, "--target does not match the morphism's target group");
    }

    Report rep;
    int default_exit = 0;
    if (app.got_subcommand("translation-like")) {
      rep = report_translation_like(ws, group);
    } else if (app.got_subcommand("hull")) {
      rep = report_hull(ws, group);
      default_exit = rep.value_of("result") == "pass" ? 0 : 1;
    } else if (app.got_subcommand("hirsch")) {
      rep = report_hirsch(ws, group);
    } else if (app.got_subcommand("crystallographic")) {
      rep = report_crystallographic(ws, group);
    } else if (app.got_subcommand("fixed-points")) {
      rep = report_fixed_points(ws, group);
    } else if (app.got_subcommand("restrict")) {
      rep = report_restrict(ws, group, span_text, point_text);
    } else if (app.got_subcommand("extend")) {
      rep = report_extend(ws, morphism);
    } else if (app.got_subcommand("induce")) {
      rep = report_induce(ws, morphism);
    } else if (app.got_subcommand("classify")) {
      rep = report_classify(ws, morphism);
    } else if (app.got_subcommand("induce-poly")) {
      rep = report_induce_poly(ws, morphism);
    } else if (app.got_subcommand("make-translation-like")) {
      rep = report_make_translation_like(ws, group);
    }
    rep.print(kv);
    if (!expect.empty()) return rep.value_of("result") == expect ? 0 : 1;
    return default_exit;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
