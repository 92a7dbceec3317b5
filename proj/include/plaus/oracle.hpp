#pragma once

#include "plaus/bisim.hpp"
#include "plaus/formula.hpp"
#include "plaus/model.hpp"

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace plaus::oracle
{

/// Coarsest partition passing the autobisimulation clauses, found by trying
/// every partition. Shares nothing with the engine beyond the model accessors:
/// classes, Min, the derived order and the clauses are recomputed here from
/// the definitions. Throws BoundExceeded above max_worlds and EngineError if
/// the passing partitions have no coarsest element.
[[nodiscard]] EquivRelation oracle_largest( const PlausibilityModel& model, std::size_t max_worlds = 8 );

/// Naive clause check on a partition, given as a block label per world.
[[nodiscard]] bool naive_is_autobisimulation( const PlausibilityModel& model, const std::vector<std::size_t>& labels );

struct ModelBounds
{
    std::size_t max_worlds = 6;
    std::size_t max_agents = 2;
    std::size_t max_props = 3;
};

/// Valid model with 1..max_worlds worlds "w0", "w1", ..., agents "a", "b", "c"
/// and propositions "p", "q", "r", "s". Each agent gets a random partition
/// into classes and a random total preorder on each class.
[[nodiscard]] PlausibilityModel random_model( std::uint64_t seed, const ModelBounds& bounds = {} );
[[nodiscard]] PlausibilityModel random_model( std::mt19937_64& rng, const ModelBounds& bounds = {} );

struct FormulaBounds
{
    std::vector<std::string> props{ "p", "q" };
    std::vector<std::string> agents{ "a" };
    LanguageTag language;
    std::size_t depth = 2;
    std::size_t max_degree = 3;
};

/// Modal depth at most bounds.depth (capped at 4); only modalities allowed by
/// bounds.language, plus knowledge.
[[nodiscard]] FormulaPtr random_formula( std::uint64_t seed, const FormulaBounds& bounds );
[[nodiscard]] FormulaPtr random_formula( std::mt19937_64& rng, const FormulaBounds& bounds );

/// Formula bounds matching a model's own propositions and agents.
[[nodiscard]] FormulaBounds bounds_for( const PlausibilityModel& model, LanguageTag language, std::size_t depth = 2 );

struct FuzzOptions
{
    std::size_t seeds = 100;
    std::uint64_t first_seed = 1;
    std::size_t formulas_per_language = 50;
    std::size_t depth = 2;
    ModelBounds model_bounds;
};

struct FuzzFailure
{
    std::uint64_t seed;
    std::string check;
    std::string detail;
};

struct FuzzReport
{
    std::size_t models = 0;
    std::size_t nontrivial_models = 0; ///< largest autobisimulation is not the identity
    std::size_t bisimilar_pairs = 0;
    std::size_t distinguished_pairs = 0;
    std::size_t formula_checks = 0;
    std::vector<FuzzFailure> failures;
};

/// Per seed: engine vs. oracle largest autobisimulation; agreement of
/// bisimilar worlds on random formulas of L^C, L^D and L^S; a verified
/// distinguishing formula for every non-bisimilar pair.
[[nodiscard]] FuzzReport fuzz( const FuzzOptions& options );

} // namespace plaus::oracle
