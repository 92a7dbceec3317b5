#pragma once

#include "plaus/formula.hpp"
#include "plaus/model.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace plaus
{

/// Partition of a model's worlds. Each world is labelled with the least
/// member of its block, which makes equal partitions compare equal.
class EquivRelation
{
public:
    EquivRelation() = default;

    static EquivRelation identity( std::size_t n );
    static EquivRelation full( std::size_t n );
    /// Worlds with equal labels share a block.
    template <typename Label>
    static EquivRelation from_labels( const std::vector<Label>& labels )
    {
        std::vector<std::size_t> rep( labels.size() );
        for ( std::size_t w = 0; w < labels.size(); ++w )
        {
            rep[ w ] = w;
            for ( std::size_t u = 0; u < w; ++u )
                if ( labels[ u ] == labels[ w ] )
                {
                    rep[ w ] = u;
                    break;
                }
        }
        return EquivRelation{ std::move( rep ) };
    }

    [[nodiscard]] std::size_t size() const { return _rep.size(); }
    [[nodiscard]] std::size_t rep( std::size_t w ) const { return _rep[ w ]; }
    [[nodiscard]] bool related( std::size_t x, std::size_t y ) const { return _rep[ x ] == _rep[ y ]; }

    [[nodiscard]] std::size_t block_count() const { return _blocks.size(); }
    /// Position of w's block in blocks().
    [[nodiscard]] std::size_t block_of( std::size_t w ) const { return _block_of[ w ]; }
    /// Blocks ordered by least member.
    [[nodiscard]] const std::vector<WorldSet>& blocks() const { return _blocks; }
    [[nodiscard]] const WorldSet& block( std::size_t w ) const { return _blocks[ _block_of[ w ] ]; }

    [[nodiscard]] Relation as_relation() const;
    /// Every block of *this lies inside a block of other.
    [[nodiscard]] bool refines( const EquivRelation& other ) const;

    friend bool operator==( const EquivRelation& l, const EquivRelation& r ) { return l._rep == r._rep; }

private:
    explicit EquivRelation( std::vector<std::size_t> rep );

    std::vector<std::size_t> _rep;
    std::vector<std::size_t> _block_of;
    std::vector<WorldSet> _blocks;
};

/// Least equivalence relation containing the given pairs.
[[nodiscard]] EquivRelation equivalence_closure( std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& pairs );
[[nodiscard]] EquivRelation equivalence_closure( const Relation& r );
/// Name-based variant; throws SemanticError for unknown worlds.
[[nodiscard]] EquivRelation equivalence_closure( const PlausibilityModel& model,
                                                 const std::vector<std::pair<std::string, std::string>>& pairs );

/// w >=^R_a v  iff  Min_a([w]_R cap [w]_a) >=_a Min_a([v]_R cap [v]_a).
[[nodiscard]] Relation derived_relation( const PlausibilityModel& model, const EquivRelation& r, std::size_t agent );
/// Same, closing an arbitrary relation first.
[[nodiscard]] Relation derived_relation( const PlausibilityModel& model, const Relation& r, std::size_t agent );

enum class Clause
{
    Atoms,
    ForthGeq,
    BackGeq,
    ForthLeq,
    BackLeq,
};

[[nodiscard]] const char* clause_name( Clause c );

struct BisimViolation
{
    Clause clause;
    std::size_t agent; ///< meaningless for Atoms
    std::size_t w;
    std::size_t w2;
    std::size_t witness; ///< the v (forth) or v' (back) without a matching partner; w for Atoms
};

struct BisimReport
{
    bool ok = true;
    std::vector<BisimViolation> violations;
};

/// Checks [atoms] and the four back/forth clauses for every pair of r.
[[nodiscard]] BisimReport check_autobisimulation( const PlausibilityModel& model, const Relation& r );

struct LargestOptions
{
    std::size_t max_brute = 8;
};

/// Signature refinement from the valuation partition, verified afterwards.
/// If verification fails the result comes from brute_force_largest instead,
/// and EngineError is thrown when the model is too large for that.
[[nodiscard]] EquivRelation largest_autobisimulation( const PlausibilityModel& model, const LargestOptions& opts = {} );

/// Partitions after each refinement round; the last one is the fixpoint.
[[nodiscard]] std::vector<EquivRelation> refinement_rounds( const PlausibilityModel& model );

/// Enumerates every partition and returns the coarsest autobisimulation.
/// Throws BoundExceeded above max_worlds.
[[nodiscard]] EquivRelation brute_force_largest( const PlausibilityModel& model, std::size_t max_worlds = 8 );

/// The derived relation for the largest autobisimulation.
[[nodiscard]] Relation normal_relation( const PlausibilityModel& model, std::size_t agent );
[[nodiscard]] Relation normal_relation( const PlausibilityModel& model, const EquivRelation& largest, std::size_t agent );

[[nodiscard]] PlausibilityModel normalize( const PlausibilityModel& model );

struct Contraction
{
    PlausibilityModel model;
    std::vector<std::size_t> quotient; ///< original world -> contracted world
};

/// Quotient by the largest autobisimulation. Each block is named "c:" followed
/// by its least member.
[[nodiscard]] Contraction contract( const PlausibilityModel& model );

struct BisimResult
{
    bool bisimilar = false;
    /// Pairs (index in m1, index in m2) related by the largest autobisimulation
    /// of the disjoint union.
    std::vector<std::pair<std::size_t, std::size_t>> relation;
};

[[nodiscard]] BisimResult bisimilar( const PlausibilityModel& m1, std::size_t w1, const PlausibilityModel& m2,
                                     std::size_t w2 );

/// An L^C formula true at w and false at w2, checked before it is returned.
/// Throws SemanticError when the worlds are bisimilar.
[[nodiscard]] FormulaPtr distinguishing_formula( const PlausibilityModel& model, std::size_t w, std::size_t w2 );

} // namespace plaus
