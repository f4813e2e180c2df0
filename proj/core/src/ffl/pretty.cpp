#include <set>
#include <sstream>

#include "mrv/ffl/check.hpp"

namespace mrv::ffl {

namespace {

struct Printer {
  std::vector<std::string> binders;  // innermost last
  std::set<std::string> inUse;

  std::string fresh(const std::string& hint) {
    std::string base = hint.empty() ? "x" : hint;
    std::string name = base;
    int n = 1;
    while (inUse.count(name)) name = base + std::to_string(n++);
    return name;
  }

  std::string varName(int idx, const std::string& display) {
    if (idx >= 0 && static_cast<size_t>(idx) < binders.size())
      return binders[binders.size() - 1 - idx];
    // free variable of an open term: fall back to its display name
    return display.empty() ? "?" + std::to_string(idx) : display;
  }

  void print(std::ostringstream& out, const TermPtr& t, bool parens) {
    switch (t->kind) {
      case TermKind::Var:
        out << varName(t->var, t->name);
        return;
      case TermKind::Lam: {
        std::string n = fresh(t->name);
        inUse.insert(n);
        binders.push_back(n);
        if (parens) out << "(";
        out << "\\" << n << ":" << showType(t->ann) << ". ";
        print(out, t->kids[0], false);
        if (parens) out << ")";
        binders.pop_back();
        inUse.erase(n);
        return;
      }
      case TermKind::App: {
        if (parens) out << "(";
        print(out, t->kids[0], true);
        out << " ";
        print(out, t->kids[1], true);
        if (parens) out << ")";
        return;
      }
      case TermKind::IntLit:
        out << t->intVal;
        return;
      case TermKind::RatLit:
        out << numerator(t->ratVal);
        if (denominator(t->ratVal) != 1) out << "/" << denominator(t->ratVal);
        out << "r";
        return;
      case TermKind::BoolLit:
        out << (t->boolVal ? "true" : "false");
        return;
      case TermKind::UnitLit:
        out << "unit";
        return;
      case TermKind::ArrayLit: {
        out << "[";
        for (size_t i = 0; i < t->kids.size(); ++i) {
          if (i) out << ", ";
          print(out, t->kids[i], false);
        }
        out << "]";
        return;
      }
      case TermKind::Pair:
        out << "(";
        print(out, t->kids[0], false);
        out << ", ";
        print(out, t->kids[1], false);
        out << ")";
        return;
      case TermKind::Fst: fn1(out, "fst", t); return;
      case TermKind::Snd: fn1(out, "snd", t); return;
      case TermKind::Inl: fn1(out, "inl", t); return;
      case TermKind::Inr: fn1(out, "inr", t); return;
      case TermKind::Case: {
        if (parens) out << "(";
        out << "case ";
        print(out, t->kids[0], true);
        std::string ln = fresh(t->name.empty() ? "l" : t->name);
        inUse.insert(ln);
        binders.push_back(ln);
        out << " of inl " << ln << " => ";
        print(out, t->kids[1], true);
        binders.pop_back();
        inUse.erase(ln);
        std::string rn = fresh(t->name2.empty() ? "r" : t->name2);
        inUse.insert(rn);
        binders.push_back(rn);
        out << " | inr " << rn << " => ";
        print(out, t->kids[2], true);
        binders.pop_back();
        inUse.erase(rn);
        if (parens) out << ")";
        return;
      }
      case TermKind::If: {
        if (parens) out << "(";
        out << "if ";
        print(out, t->kids[0], true);
        out << " then ";
        print(out, t->kids[1], true);
        out << " else ";
        print(out, t->kids[2], true);
        if (parens) out << ")";
        return;
      }
      case TermKind::Index:
        print(out, t->kids[0], true);
        out << "[";
        print(out, t->kids[1], false);
        out << "]";
        return;
      case TermKind::Update:
        print(out, t->kids[0], true);
        out << "[";
        print(out, t->kids[1], false);
        out << " := ";
        print(out, t->kids[2], false);
        out << "]";
        return;
      case TermKind::Length: fn1(out, "length", t); return;
      case TermKind::Replicate: fnN(out, "replicate", t); return;
      case TermKind::Range: fnN(out, "range", t); return;
      case TermKind::Zip: fnN(out, "zip", t); return;
      case TermKind::Map: fnN(out, "map", t); return;
      case TermKind::Concat: fn1(out, "concat", t); return;
      case TermKind::Group: fn1(out, "group", t); return;
      case TermKind::Fold: fnN(out, "fold", t); return;
      case TermKind::Iter: fnN(out, "iter", t); return;
      case TermKind::FlatMap: fnN(out, "flatMap", t); return;
      case TermKind::ReduceByKey: fnN(out, "reduceByKey", t); return;
      case TermKind::Bin: {
        if (parens) out << "(";
        print(out, t->kids[0], true);
        out << " " << binOpName(t->bop) << " ";
        print(out, t->kids[1], true);
        if (parens) out << ")";
        return;
      }
      case TermKind::Un: {
        switch (t->uop) {
          case UnOp::Neg: out << "-"; print(out, t->kids[0], true); return;
          case UnOp::Not: out << "!"; print(out, t->kids[0], true); return;
          case UnOp::IntToRat: fn1(out, "rat", t); return;
        }
        return;
      }
      case TermKind::Seq: fnN(out, "seq", t); return;
      case TermKind::Probe:
        print(out, t->kids[0], parens);
        return;
    }
  }

  void fn1(std::ostringstream& out, const char* name, const TermPtr& t) {
    out << name << "(";
    print(out, t->kids[0], false);
    out << ")";
  }
  void fnN(std::ostringstream& out, const char* name, const TermPtr& t) {
    out << name << "(";
    for (size_t i = 0; i < t->kids.size(); ++i) {
      if (i) out << ", ";
      print(out, t->kids[i], false);
    }
    out << ")";
  }
};

}  // namespace

std::string renderTerm(const TermPtr& t) {
  std::ostringstream out;
  Printer p;
  p.print(out, t, false);
  return out.str();
}

}  // namespace mrv::ffl
