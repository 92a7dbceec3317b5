#pragma once

#include "plaus/formula.hpp"
#include "plaus/model.hpp"
#include "plaus/semantics.hpp"

#include <cstddef>

namespace plaus
{

/// Replaces every B[a | psi] phi by
///   Khat[a] psi -> Khat[a] (psi & [][a] (psi -> phi)).
/// Throws SemanticError unless f is in L^C.
[[nodiscard]] FormulaPtr cond_to_safe( const FormulaPtr& f );

/// Replaces every K[a] phi by B[a | ~phi] false.
[[nodiscard]] FormulaPtr expand_knowledge( const FormulaPtr& f );

/// The k whose normal-mode layer E^k of [w]_a contains Min_a([[psi]] cap [w]_a).
/// Throws SemanticError when psi holds nowhere in the class.
[[nodiscard]] std::size_t layer_index( const ModelChecker& checker, std::size_t w, std::size_t agent,
                                       const FormulaPtr& psi );

/// The world-dependent translation of an L^C formula into L^D at (model, w).
/// Each conditional belief B[a | psi] phi becomes
///   B[a # k] OR{s_v(psi -> phi)} & Bhat[a # k] OR{s_v(psi)}   if psi holds somewhere in [w]_a,
///   K[a] OR{s_v(~psi)}                                        otherwise,
/// with v ranging over [w]_a. Knowledge is read as B[a | ~phi] false. The
/// disjunctions are deduplicated, sorted by printed form and nested to the right.
[[nodiscard]] FormulaPtr cond_to_degrees( const ModelChecker& checker, std::size_t w, const FormulaPtr& f );
[[nodiscard]] FormulaPtr cond_to_degrees( const PlausibilityModel& model, std::size_t w, const FormulaPtr& f );

} // namespace plaus
