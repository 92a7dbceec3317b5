#pragma once

#include "plaus/world_set.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

namespace plaus
{

using Valuation = std::set<std::string>;

/// World ids: non-empty runs of letters, digits, '_', '\'' and ':'.
[[nodiscard]] bool is_world_token( std::string_view token );

/// Agent ids: non-empty runs of letters, digits and '_'.
[[nodiscard]] bool is_agent_token( std::string_view token );

struct Violation
{
    std::string invariant;
    std::string agent;
    std::string x;
    std::string y;

    friend bool operator==( const Violation&, const Violation& ) = default;
};

[[nodiscard]] std::string describe( const Violation& v );

/// Finite multi-agent plausibility model.
///
/// Worlds and agents are stored in lexicographic order of their ids and
/// addressed by index. Each agent's relation is held reflexively and
/// transitively closed; (x, y) in plaus(a) means x >=_a y.
class PlausibilityModel
{
public:
    PlausibilityModel() = default;

    [[nodiscard]] std::size_t size() const { return _worlds.size(); }
    [[nodiscard]] std::size_t agent_count() const { return _agents.size(); }

    [[nodiscard]] const std::vector<std::string>& worlds() const { return _worlds; }
    [[nodiscard]] const std::vector<std::string>& agents() const { return _agents; }
    [[nodiscard]] const std::string& world( std::size_t w ) const { return _worlds[ w ]; }
    [[nodiscard]] const std::string& agent( std::size_t a ) const { return _agents[ a ]; }

    /// Throws SemanticError for unknown ids.
    [[nodiscard]] std::size_t world_index( std::string_view id ) const;
    [[nodiscard]] std::size_t agent_index( std::string_view id ) const;
    [[nodiscard]] std::optional<std::size_t> find_world( std::string_view id ) const;
    [[nodiscard]] std::optional<std::size_t> find_agent( std::string_view id ) const;

    [[nodiscard]] const Valuation& valuation( std::size_t w ) const { return _val[ w ]; }
    [[nodiscard]] bool holds( std::size_t w, const std::string& prop ) const
    {
        return _val[ w ].count( prop ) != 0;
    }
    /// Every proposition true somewhere in the model.
    [[nodiscard]] std::set<std::string> propositions() const;

    [[nodiscard]] const Relation& plaus( std::size_t a ) const { return _plaus[ a ]; }
    [[nodiscard]] bool geq( std::size_t a, std::size_t x, std::size_t y ) const
    {
        return _plaus[ a ].contains( x, y );
    }

    /// Index of the ~a-class containing w; classes are numbered by least member.
    [[nodiscard]] std::size_t class_id( std::size_t a, std::size_t w ) const { return _class_of[ a ][ w ]; }
    [[nodiscard]] const WorldSet& epistemic_class( std::size_t a, std::size_t w ) const
    {
        return _classes[ a ][ _class_of[ a ][ w ] ];
    }
    [[nodiscard]] const std::vector<WorldSet>& classes( std::size_t a ) const { return _classes[ a ]; }
    [[nodiscard]] bool same_class( std::size_t a, std::size_t x, std::size_t y ) const
    {
        return _class_of[ a ][ x ] == _class_of[ a ][ y ];
    }

    [[nodiscard]] WorldSet all_worlds() const { return WorldSet{ size(), true }; }

    /// Same worlds and valuation with new relations (closed on the way in).
    [[nodiscard]] PlausibilityModel with_relations( std::vector<Relation> plaus ) const;

    friend bool operator==( const PlausibilityModel& l, const PlausibilityModel& r )
    {
        return l._worlds == r._worlds && l._agents == r._agents && l._val == r._val && l._plaus == r._plaus;
    }

private:
    friend class ModelBuilder;

    // Worlds and agents must already be sorted and unique.
    PlausibilityModel( std::vector<std::string> worlds, std::vector<Valuation> val,
                       std::vector<std::string> agents, std::vector<Relation> plaus );

    std::vector<std::string> _worlds;
    std::vector<std::string> _agents;
    std::vector<Valuation> _val;
    std::vector<Relation> _plaus;
    std::vector<std::vector<std::size_t>> _class_of;
    std::vector<std::vector<WorldSet>> _classes;
};

/// Collects worlds, agents and raw edges, then closes and validates.
class ModelBuilder
{
public:
    ModelBuilder& world( const std::string& id, Valuation val = {} );
    ModelBuilder& agent( const std::string& id );
    /// Records x >=_a y. Both worlds and the agent must already be declared.
    ModelBuilder& edge( const std::string& agent, const std::string& x, const std::string& y );
    /// x_0 >= x_1 >= ... for the given agent.
    ModelBuilder& chain( const std::string& agent, const std::vector<std::string>& worlds );

    /// Throws ValidationError naming the first violated invariant.
    [[nodiscard]] PlausibilityModel build() const;
    /// Closed but not validated.
    [[nodiscard]] PlausibilityModel build_unchecked() const;

private:
    std::map<std::string, Valuation> _worlds;
    std::set<std::string> _agents;
    std::vector<std::tuple<std::string, std::string, std::string>> _edges;
};

/// Every violated model invariant, in a deterministic order.
[[nodiscard]] std::vector<Violation> validate( const PlausibilityModel& model );

/// Min_a(Y): members y with y' >=_a y for all y' in Y. Y must lie in one ~a-class.
[[nodiscard]] WorldSet min_set( const PlausibilityModel& model, std::size_t agent, const WorldSet& y );

/// Min over an arbitrary relation; used for the derived orders.
[[nodiscard]] WorldSet min_set( const Relation& order, const WorldSet& y );

/// Y >=_a Z lifted to sets; vacuous when either side is empty.
[[nodiscard]] bool set_leq( const PlausibilityModel& model, std::size_t agent, const WorldSet& y, const WorldSet& z );

struct UnionResult
{
    PlausibilityModel model;
    std::vector<std::size_t> left;  ///< index in m1 -> index in the union
    std::vector<std::size_t> right; ///< index in m2 -> index in the union
};

/// Worlds of m1 become "L:id", those of m2 "R:id". The agent set is the union;
/// an agent missing from one side is ignorant of nothing there (identity relation).
[[nodiscard]] UnionResult disjoint_union( const PlausibilityModel& m1, const PlausibilityModel& m2 );

/// Submodel on the given worlds, with world ids optionally stripped of a prefix.
[[nodiscard]] PlausibilityModel restrict_to( const PlausibilityModel& model, const WorldSet& worlds,
                                             std::string_view strip_prefix = {} );

/// A bijection f (index in m1 -> index in m2) preserving valuations and every
/// agent's relation, if one exists. Agents are matched by name.
[[nodiscard]] std::optional<std::vector<std::size_t>> find_isomorphism( const PlausibilityModel& m1,
                                                                        const PlausibilityModel& m2 );

} // namespace plaus
