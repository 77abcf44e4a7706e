// Acceptance suite: one line per criterion, exit status 0 iff all pass.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "aqftop/aqft.hpp"
#include "aqftop/gns.hpp"
#include "aqftop/symseq.hpp"
#include "corpus.hpp"

using namespace aqftop;
using aqftop::testing::bundled_categories;
using aqftop::testing::bundled_instances;
using aqftop::testing::load_category;
using aqftop::testing::load_functor;
using aqftop::testing::load_monoid;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

/// Collects the reasons a criterion failed; empty means pass.
struct Outcome {
  std::vector<std::string> problems;
  std::vector<std::string> info;

  void require(bool ok, const std::string& what) {
    if (!ok) problems.push_back(what);
  }
};

std::string first_witness(const Report& r) {
  for (const Family& f : r.families()) {
    if (!f.passed) return f.name + ": " + f.witness;
  }
  return "none";
}

struct Criterion {
  int id;
  std::string title;
  double limit_s;  // 0 means untimed
  std::function<Outcome()> run;
};

// Operads of the bundled categories at arity 4, shared by criteria 2 and 3.
std::vector<AqftOperad> g_operads;

Outcome counts() {
  Outcome o;
  const AqftOperad as = build_aqft_operad(load_category("terminal_empty.cat"), 5);
  const AqftOperad com = build_aqft_operad(load_category("terminal_full.cat"), 5);
  const std::size_t expect[] = {1, 1, 2, 6, 24, 120};
  std::ostringstream as_line, com_line;
  for (std::size_t n = 0; n <= 5; ++n) {
    const auto sa = as.operad.seq.find(Profile(n, 0), 0);
    const auto sc = com.operad.seq.find(Profile(n, 0), 0);
    const std::size_t a = sa ? as.operad.seq.slot(*sa).size() : 0;
    const std::size_t c = sc ? com.operad.seq.slot(*sc).size() : 0;
    as_line << (n ? " " : "") << a;
    com_line << (n ? " " : "") << c;
    o.require(a == expect[n], "empty relation, arity " + std::to_string(n) + ": " + std::to_string(a));
    o.require(c == 1, "full relation, arity " + std::to_string(n) + ": " + std::to_string(c));
  }
  o.info.push_back("empty: " + as_line.str() + "; full: " + com_line.str());
  return o;
}

Outcome operad_axioms() {
  Outcome o;
  for (const std::string& name : bundled_categories()) {
    g_operads.push_back(build_aqft_operad(load_category(name), 4));
    const Report r = check_operad_axioms(g_operads.back().operad, 4);
    o.require(r.passed(), name + ": " + first_witness(r));
    for (const char* fam : {"equivariance-outer", "equivariance-inner", "associativity", "unit-left",
                            "unit-right"}) {
      o.require(r.find(fam) && r.find(fam)->checked > 0, name + ": " + fam + " never examined");
    }
  }
  // Every entry of every table, one at a time.
  std::size_t mutants = 0, detected = 0;
  auto sweep = [&](const ComponentOperad& op, std::size_t arity, const std::string& name) {
    const MutationSweep s = mutation_sweep(op, arity);
    mutants += s.mutants;
    detected += s.detected;
    for (const std::string& u : s.undetected) o.problems.push_back(name + ": undetected " + u);
  };
  for (const std::string& name : bundled_categories()) {
    sweep(build_aqft_operad(load_category(name), 3).operad, 3, name + "@3");
  }
  sweep(g_operads[0].operad, 4, "terminal_empty@4");
  sweep(g_operads[1].operad, 4, "terminal_full@4");
  o.require(mutants > 0 && detected == mutants, "mutation sweep detected " + std::to_string(detected) +
                                                    " of " + std::to_string(mutants));
  o.info.push_back("mutants detected " + std::to_string(detected) + "/" + std::to_string(mutants));
  return o;
}

Outcome star_operads() {
  Outcome o;
  if (g_operads.size() != bundled_categories().size()) {
    o.problems.push_back("operads from criterion 2 are missing");
    return o;
  }
  const auto start = Clock::now();
  for (std::size_t k = 0; k < g_operads.size(); ++k) {
    for (StarVariant v : {StarVariant::Reverse, StarVariant::Identity}) {
      const AqftOperad s = attach_star(g_operads[k], v);
      const Report r = check_star_operad(s.operad, 4);
      o.require(r.passed(), s.operad.name + ": " + first_witness(r));
    }
  }
  o.info.push_back("checks " + std::to_string(seconds_since(start)).substr(0, 5) +
                   " s, operads reused from criterion 2");
  return o;
}

/// One perturbed entry counts as detected when any stage rejects it.
bool rejected(const FunctorToMon& f, const OrthCategory& cat, const AqftOperad& op) {
  if (!check_functor(f, cat).passed() || !check_perp_commutativity(f, cat).passed()) return true;
  try {
    return !check_algebra(op.operad, algebra_from_functor(f, op), 3).passed();
  } catch (const ValidationError&) {
    return true;
  }
}

Outcome round_trip() {
  Outcome o;
  std::size_t perturbed = 0, caught = 0;
  for (const auto& [cat_file, fun_file] : bundled_instances()) {
    const std::string tag = cat_file + " " + fun_file;
    const OrthCategory cat = load_category(cat_file);
    const FunctorToMon f = load_functor(fun_file, cat);
    const AqftOperad op = build_aqft_operad(cat, 3);
    const AlgebraPresentation a = algebra_from_functor(f, op);
    const Report r = check_algebra(op.operad, a, 3);
    o.require(r.passed(), tag + ": " + first_witness(r));
    o.require(same_presentation(functor_from_algebra(a, op), f), tag + ": round trip changed the functor");
    for (MorId g = 0; g < cat.morphism_count(); ++g) {
      const LinMap& m = f.morphisms[g];
      for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
          FunctorToMon bad = f;
          bad.morphisms[g](i, j) += 1;
          ++perturbed;
          if (rejected(bad, cat, op)) {
            ++caught;
          } else {
            o.problems.push_back(tag + ": entry (" + std::to_string(i) + ", " + std::to_string(j) +
                                 ") of " + cat.morphism_name(g) + " not detected");
          }
        }
    }
  }
  o.info.push_back("perturbations detected " + std::to_string(caught) + "/" + std::to_string(perturbed));
  return o;
}

Outcome discriminator() {
  Outcome o;
  const AqftOperad as = build_aqft_operad(load_category("terminal_empty.cat"), 3);
  const AqftOperad rev = attach_star(as, StarVariant::Reverse);
  const AqftOperad id = attach_star(as, StarVariant::Identity);
  struct Case {
    const char* file;
    const char* monoid;
    bool reverse, identity;
  };
  const Case cases[] = {{"mat2_dagger.alg", "Mat2", true, false},
                        {"mat2_conj.alg", "Mat2conj", false, true},
                        {"complex.alg", "C", true, true}};
  for (const Case& c : cases) {
    const Monoid m = load_monoid(c.file, c.monoid);
    FunctorToMon f;
    f.objects = {m};
    f.morphisms = {LinMap::identity(m.dim())};
    for (const auto& [op, want, label] : {std::tuple{&rev, c.reverse, "reverse"}, std::tuple{&id, c.identity, "identity"}}) {
      const Report r = check_star_algebra(op->operad, algebra_from_functor(f, *op), 3);
      o.require(r.passed() == want, std::string(c.monoid) + " under the " + label + " star: " +
                                        (r.passed() ? "accepted" : "rejected"));
      o.info.push_back(std::string(c.monoid) + "/" + label + ": " +
                       (r.passed() ? "pass" : "fail, witness " + first_witness(r)));
    }
  }
  return o;
}

Outcome gns() {
  Outcome o;
  const Monoid cz2 = load_monoid("group_z2.alg", "CZ2");
  const GnsResult z2 = gns_construct({cz2, {1, 0}});
  o.require(z2.space.gram == LinMap::identity(2), "C[Z2] Gram is " + z2.space.gram.str());
  o.require(check_representation(cz2, z2.space, z2.rep).passed(), "C[Z2] representation rejected");

  const Monoid mat = load_monoid("mat2_dagger.alg", "Mat2");
  const GnsResult m = gns_construct({mat, {Rational(1, 2), 0, 0, Rational(1, 2)}});
  // Basis E_ij at index 2(i-1) + (j-1).
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b) {
      const GaussC want = a == b ? GaussC(Rational(1, 2)) : GaussC(0);
      o.require(m.space.gram(a, b) == want, "Mat2 Gram entry " + mat.basis[a] + "," + mat.basis[b] +
                                                " is " + m.space.gram(a, b).str());
    }
  const Report rep = check_representation(mat, m.space, m.rep);
  o.require(rep.passed(), "Mat2 representation: " + first_witness(rep));
  const Family* compat = rep.find("compatibility");
  o.require(compat && compat->checked > 0, "compatibility never examined");
  if (compat) o.info.push_back("Mat2 compatibility instances " + std::to_string(compat->checked));
  return o;
}

Outcome coend() {
  Outcome o;
  std::vector<ComponentOperad> ops{associative_operad(3), commutative_operad(3),
                                   build_aqft_operad(load_category("terminal_empty.cat"), 3).operad,
                                   build_aqft_operad(load_category("terminal_full.cat"), 3).operad};
  for (const ComponentOperad& op : ops) {
    const Report r = check_monoid_formulation(op, 3);
    o.require(r.passed(), op.name + ": " + first_witness(r));
  }
  const PositivePart p = positive_part(ops[0]);
  const CoendResult pp = circle_product(p.seq, p.seq, 3);
  const auto s2 = pp.seq.find({0, 0}, 0);
  const std::size_t n2 = s2 ? pp.seq.slot(*s2).size() : 0;
  o.require(n2 == 4, "|As o As(2)| = " + std::to_string(n2));
  o.info.push_back("|As o As(2)| = " + std::to_string(n2));
  return o;
}

Outcome kan() {
  Outcome o;
  std::size_t checked = 0;
  for (const KanInstance& k : bundled_kan_instances()) {
    if (k.target_colors.size() != 1 || k.source_colors.size() != 2) continue;
    for (const SymSeqSet* s : {&k.x, &k.y})
      for (std::uint32_t i = 0; i < s->slot_count(); ++i) {
        o.require(s->slot(i).size() <= 3, k.name + ": a slot has " + std::to_string(s->slot(i).size()) + " elements");
      }
    const Report r = check_kan_adjunction(k.f, k.source_colors, k.target_colors, k.x, k.y);
    o.require(r.passed(), k.name + ": " + first_witness(r));
    for (const char* fam : {"triangle-left", "triangle-right"}) {
      const Family* f = r.find(fam);
      o.require(f && f->checked > 0, k.name + ": " + fam + " never examined");
    }
    ++checked;
  }
  o.require(checked >= 2, "fewer than two collapse instances");
  o.info.push_back("collapse instances " + std::to_string(checked));
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "As/Com operation counts", 1.0, counts},
      {2, "operad axioms at arity 4 and mutation sweep", 30.0, operad_axioms},
      {3, "both star variants at arity 4", 10.0, star_operads},
      {4, "functor/algebra round trip and perturbations", 0.0, round_trip},
      {5, "reversing discriminator", 0.0, discriminator},
      {6, "GNS Gram matrices and compatibility", 0.0, gns},
      {7, "coend oracle up to arity 3", 10.0, coend},
      {8, "triangle identities for the collapse", 0.0, kan},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.problems.push_back(std::string("exception: ") + e.what());
    }
    const double t = seconds_since(start);
    if (c.limit_s > 0 && t >= c.limit_s) {
      o.problems.push_back("took " + std::to_string(t) + " s, limit " + std::to_string(c.limit_s) + " s");
    }
    const bool pass = o.problems.empty();
    failed += !pass;
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.2f s", t);
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title << " (" << timing
              << (c.limit_s > 0 ? ", limit " + std::to_string(static_cast<int>(c.limit_s)) + " s" : "")
              << ")\n";
    for (const std::string& s : o.info) std::cout << "    " << s << "\n";
    for (std::size_t i = 0; i < o.problems.size() && i < 10; ++i) std::cout << "    problem: " << o.problems[i] << "\n";
  }
  std::cout << (failed ? "acceptance: FAIL" : "acceptance: PASS") << " (" << criteria.size() - failed << "/"
            << criteria.size() << ")\n";
  return failed ? 1 : 0;
}
