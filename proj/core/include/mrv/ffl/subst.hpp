#pragma once

#include "mrv/ffl/term.hpp"

namespace mrv::ffl {

/// Shifts free variable indices >= cutoff by `by` (may be negative; asserts no
/// variable would cross below the cutoff).
TermPtr shift(const TermPtr& t, int by, int cutoff = 0);

/// Capture-avoiding substitution of `s` for the free variable `index`
/// (`s` is shifted as it moves under binders; other variables are untouched).
TermPtr substitute(const TermPtr& t, int index, const TermPtr& s);

/// True iff `t` mentions the free variable `index`.
bool mentionsVar(const TermPtr& t, int index);

/// Largest free variable index in t, or -1 when closed.
int maxFreeVar(const TermPtr& t);

/// Alpha-equivalence: structural equality ignoring display names and spans.
bool alphaEqual(const TermPtr& a, const TermPtr& b);

/// Path to the first structural difference, with short renderings of both
/// subterms; empty when alpha-equal.
std::string diffTerms(const TermPtr& a, const TermPtr& b);

}  // namespace mrv::ffl
