#pragma once

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "wb/closure.hpp"
#include "wb/lab/formula.hpp"
#include "wb/seed.hpp"
#include "wb/stream/problems.hpp"

namespace wb::cli {

inline std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline KnowledgeBase resolveKB(const std::string& spec) {
  if (spec == "seed") return seedKB();
  return loadKB(readFile(spec));
}

/// Runs one workbench command. Exit codes: 0/1/2 = YES/NO/UNKNOWN for
/// queries (valid/invalid for validate), 3 = parse or I/O error.
inline int dispatch(std::vector<std::string> args, std::ostream& out,
                    std::ostream& err) {
  CLI::App app{"wb - a workbench for the Weihrauch-degree calculus"};
  app.require_subcommand(1);

  std::string kbSpec = "seed";
  std::string kindStr = "W";
  int depth = 1;
  bool explainFlag = false;

  auto addCommon = [&](CLI::App* c, bool withKind = true) {
    c->add_option("--kb", kbSpec, "knowledge base file, or 'seed'");
    if (withKind) c->add_option("--kind", kindStr, "SW|W|STW|TW|PW|PTW");
    c->add_option("--depth", depth, "universe expansion depth");
    c->add_flag("--explain", explainFlag, "print the proof trace");
  };

  // normalize
  std::vector<std::string> terms;
  auto* cNorm = app.add_subcommand("normalize", "print the canonical form");
  addCommon(cNorm);
  cNorm->add_option("term", terms, "term(s)")->required();

  // query / explain
  auto* cQuery = app.add_subcommand("query", "YES/NO/UNKNOWN for le(kind,a,b)");
  addCommon(cQuery);
  std::string propFlag;
  cQuery->add_option("--prop", propFlag, "query prop(flag, term) instead");
  cQuery->add_option("term", terms, "two terms (one with --prop)")->required();

  auto* cExplain = app.add_subcommand("explain", "query and print the trace");
  addCommon(cExplain);
  cExplain->add_option("term", terms, "two terms")->required();

  // close
  std::string outFile;
  auto* cClose = app.add_subcommand("close", "saturate and dump the fact base");
  addCommon(cClose, false);
  cClose->add_option("--out", outFile, "output file (default stdout)");

  // check-algebra
  std::string algebraFile, formulaStr;
  auto* cCheck = app.add_subcommand("check-algebra", "classify a finite algebra");
  cCheck->add_option("file", algebraFile, "algebra file")->required();

  // validate
  auto* cValidate =
      app.add_subcommand("validate", "propositional validity over an algebra");
  cValidate->add_option("--algebra", algebraFile, "algebra file")->required();
  cValidate->add_option("--formula", formulaStr, "formula, e.g. \"~~A | ~A\"")
      ->required();

  // stream-demo
  std::string demoName = "all";
  auto* cDemo = app.add_subcommand("stream-demo", "run witness checks");
  cDemo->add_option("name", demoName, "lpo|sort|acc2|accN|all");

  // rules
  auto* cRules = app.add_subcommand("rules", "print the rule catalogs");

  try {
    std::vector<const char*> argv;
    argv.push_back("wb");
    for (auto& a : args) argv.push_back(a.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 3;
  }

  try {
    if (cNorm->parsed()) {
      Kind k = parseKindOrThrow(kindStr);
      KnowledgeBase kb = resolveKB(kbSpec);
      for (const auto& t : terms)
        out << printTerm(normalize(parseTerm(t), k, kb)) << "\n";
      return 0;
    }

    if (cQuery->parsed() || cExplain->parsed()) {
      bool wantTrace = explainFlag || cExplain->parsed();
      Kind k = parseKindOrThrow(kindStr);
      KnowledgeBase kb = resolveKB(kbSpec);
      QueryResult res;
      if (!propFlag.empty()) {
        if (terms.size() != 1)
          throw std::runtime_error("--prop takes exactly one term");
        auto fl = parseFlag(propFlag);
        if (!fl) throw std::runtime_error("unknown flag " + propFlag);
        TermPtr t = parseTerm(terms[0]);
        kb.addUniverseTerm(t);
        close(kb, depth);
        res = queryProp(kb, *fl, t);
      } else {
        if (terms.size() != 2)
          throw std::runtime_error("query takes exactly two terms");
        TermPtr a = parseTerm(terms[0]), b = parseTerm(terms[1]);
        kb.addUniverseTerm(a);
        kb.addUniverseTerm(b);
        close(kb, depth);
        res = query(kb, k, a, b);
      }
      out << answerName(res.answer) << "\n";
      if (wantTrace && res.factId)
        out << explain(buildTrace(kb, *res.factId));
      switch (res.answer) {
        case Answer::YES: return 0;
        case Answer::NO: return 1;
        case Answer::UNKNOWN: return 2;
      }
    }

    if (cClose->parsed()) {
      KnowledgeBase kb = resolveKB(kbSpec);
      CloseStats stats = close(kb, depth);
      std::ostringstream body;
      for (const auto& [name, decl] : kb.atoms()) body << "atom " << name << "\n";
      for (const auto& f : kb.facts()) {
        body << f.render();
        if (f.src == Fact::Src::Derived)
          body << "  # derived by " << f.rule;
        else if (!f.citation.empty())
          body << "  # " << f.citation;
        body << "\n";
      }
      if (outFile.empty()) {
        out << body.str();
      } else {
        std::ofstream o(outFile, std::ios::binary);
        if (!o) throw std::runtime_error("cannot write " + outFile);
        o << body.str();
      }
      err << "closed: " << kb.facts().size() << " facts ("
          << stats.derived << " derived), universe " << stats.universeSize
          << "\n";
      return 0;
    }

    if (cCheck->parsed()) {
      lab::FiniteAlgebra A = lab::loadAlgebra(readFile(algebraFile));
      lab::AlgebraReport rep = lab::checkWeihrauchAlgebra(A);
      out << "carrier: " << A.n() << " elements\n";
      out << "classification: " << rep.classification() << "\n";
      out << "commutative: " << (rep.commutative ? "yes" : "no")
          << "  deductive: " << (rep.deductive ? "yes" : "no")
          << "  distributive: " << (rep.distributive ? "yes" : "no") << "\n";
      if (!A.imp) out << "co-residual implication: does not exist\n";
      for (const auto& f : rep.failures) out << "failure: " << f << "\n";
      return 0;
    }

    if (cValidate->parsed()) {
      lab::FiniteAlgebra A = lab::loadAlgebra(readFile(algebraFile));
      lab::FormulaPtr f = lab::parseFormula(formulaStr);
      lab::ValidityResult r = lab::isValid(A, f);
      if (r.valid) {
        out << "valid\n";
        return 0;
      }
      out << "invalid\n";
      out << "countervaluation:";
      for (const auto& [var, val] : r.countervaluation)
        out << " " << var << "=" << A.name(val);
      out << "  value=" << A.name(r.value) << "\n";
      return 1;
    }

    if (cDemo->parsed()) {
      using namespace streams;
      auto runDemo = [&](const std::string& name,
                         const ProblemSemantics& sem) {
        WitnessPair w = completenessWitness(name);
        std::vector<UPName> samples = {
            UPName::constant(0), UPName::constant(2), UPName({1, 1, 0}, {1}),
            UPName({2, 1}, {1}), UPName({0, 0, 3}, {1})};
        if (name == "SORT")
          samples = {UPName::constant(0), UPName::constant(2),
                     UPName({2, 1}, {2}), UPName({1, 2, 1}, {2}),
                     UPName({2, 2}, {1})};
        if (name == "ACC_2" || name == "ACC_N")
          samples = {UPName::constant(0), UPName::constant(1),
                     UPName({1, 1, 3}, {1}), UPName({0, 2}, {0}),
                     UPName({1}, {1})};
        out << "== witness comp(" << name << ") <=SW " << name << "\n";
        for (const UPName& p : samples) {
          Point x = decodeCompletion(sem.inSpace, p);
          UPName kp = w.K.applyUP(p);
          out << "  sample " << p.str() << "  decodes to " << pointStr(x)
              << "\n";
          out << "    K(p) = " << kp.str() << "\n";
          auto gin = sem.inSpace.decoder(kp);
          if (gin && sem.inDom(*gin).value_or(false)) {
            for (const UPName& o : sem.realizerOutputs(*gin)) {
              UPName y = w.H.applyUP(o);
              out << "    G(K(p)) = " << o.str() << "  ->  H = " << y.str()
                  << "  decodes to "
                  << pointStr(decodeCompletion(sem.outSpace, y)) << "\n";
              break;  // one representative per sample keeps the log short
            }
          }
        }
        ReductionReport rep = checkCompletionReduction(
            sem, w.H, w.K, allUPNames(3, 2, 3));
        out << "  exhaustive small samples: " << rep.passed << " pass, "
            << rep.failures.size() << " fail\n";
      };
      if (demoName == "lpo" || demoName == "all") runDemo("LPO", lpoSemantics());
      if (demoName == "sort" || demoName == "all")
        runDemo("SORT", sortSemantics());
      if (demoName == "acc2" || demoName == "all")
        runDemo("ACC_2", accSemantics(2));
      if (demoName == "accN" || demoName == "all")
        runDemo("ACC_N", accSemantics(std::nullopt));
      return 0;
    }

    if (cRules->parsed()) {
      out << "== rewrite rules (lhs => rhs, strongest kind)\n";
      for (const auto& r : ruleSet()) {
        out << r.name << " [" << kindName(r.kindTag) << "] "
            << r.lhs->render() << " => " << r.rhs->render();
        for (const auto& c : r.conds) out << "  when " << c.render();
        out << "\n    -- " << r.citation << "\n";
      }
      out << "\n== inference rules\n";
      for (const auto& r : inferenceRules()) {
        if (r.family == "D19") continue;  // generated contrapositives
        out << r.name << ": " << r.render() << "\n    -- " << r.citation
            << "\n";
      }
      out << "(plus " << rulesOfFamily("D19").size()
          << " generated contrapositive rules, family D19)\n";
      return 0;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
  return 3;
}

}  // namespace wb::cli
