#pragma once

#include "plaus/bisim.hpp"
#include "plaus/formula.hpp"
#include "plaus/model.hpp"

#include <cstddef>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace plaus
{

/// Which order drives safe belief and the belief spheres: the normal
/// plausibility relation, or the model's own >=_a.
enum class SemanticsMode
{
    Normal,
    Raw,
};

[[nodiscard]] SemanticsMode parse_mode( const std::string& text );
[[nodiscard]] const char* to_string( SemanticsMode mode );

struct LayerDecomposition
{
    std::size_t agent = 0;
    WorldSet cls;
    std::vector<WorldSet> layers;  ///< E^0, E^1, ...
    std::vector<WorldSet> spheres; ///< Min^n = E^0 cup ... cup E^n
    std::size_t max_degree = 0;

    /// Min^n, clamped to the whole class beyond max_degree.
    [[nodiscard]] const WorldSet& sphere( std::size_t n ) const { return spheres[ n < max_degree ? n : max_degree ]; }
    /// Index of the layer containing w.
    [[nodiscard]] std::size_t layer_of( std::size_t w ) const;
};

/// Peels successive Min levels of `order` off the class.
[[nodiscard]] LayerDecomposition decompose( const Relation& order, const WorldSet& cls, std::size_t agent = 0 );

/// Evaluates formulas on one model.
///
/// The normal plausibility relations (and so the largest autobisimulation)
/// are computed at most once, on the first query that needs them. Copies
/// share that cache, and concurrent queries are safe.
class ModelChecker
{
public:
    explicit ModelChecker( PlausibilityModel model, SemanticsMode mode = SemanticsMode::Normal );

    [[nodiscard]] const PlausibilityModel& model() const { return _state->model; }
    [[nodiscard]] SemanticsMode mode() const { return _mode; }

    /// Order used for safe belief and spheres in the current mode.
    [[nodiscard]] const Relation& order( std::size_t agent ) const;
    [[nodiscard]] const EquivRelation& largest() const;
    [[nodiscard]] const LayerDecomposition& spheres( std::size_t agent, std::size_t w ) const;

    [[nodiscard]] bool satisfies( std::size_t w, const FormulaPtr& f ) const;
    [[nodiscard]] WorldSet extension( const FormulaPtr& f ) const;
    [[nodiscard]] bool valid( const FormulaPtr& f ) const;

    /// Same model, other mode, sharing the cache.
    [[nodiscard]] ModelChecker with_mode( SemanticsMode mode ) const;

private:
    struct Derived
    {
        EquivRelation largest;
        std::vector<Relation> normal;
        // [mode][agent][class id]
        std::vector<std::vector<LayerDecomposition>> layers[ 2 ];
    };
    struct State
    {
        explicit State( PlausibilityModel m ) : model{ std::move( m ) } {}
        PlausibilityModel model;
        std::once_flag normal_once;
        std::once_flag raw_once;
        Derived derived;
    };

    ModelChecker( std::shared_ptr<State> state, SemanticsMode mode ) : _state{ std::move( state ) }, _mode{ mode } {}

    void ensure( SemanticsMode mode ) const;

    std::shared_ptr<State> _state;
    SemanticsMode _mode;
};

[[nodiscard]] bool satisfies( const PlausibilityModel& model, std::size_t w, const FormulaPtr& f,
                              SemanticsMode mode = SemanticsMode::Normal );
[[nodiscard]] WorldSet extension( const PlausibilityModel& model, const FormulaPtr& f,
                                  SemanticsMode mode = SemanticsMode::Normal );
[[nodiscard]] bool valid_on_model( const PlausibilityModel& model, const FormulaPtr& f,
                                   SemanticsMode mode = SemanticsMode::Normal );
[[nodiscard]] LayerDecomposition spheres( const PlausibilityModel& model, std::size_t agent, std::size_t w,
                                          SemanticsMode mode = SemanticsMode::Normal );

/// phi_0 = true; phi_n = <>_a(phi_{n-1} & p) for even n, <>_a(phi_{n-1} & ~p) for odd n.
[[nodiscard]] FormulaPtr demey_counting_formula( std::size_t n, const std::string& agent = "a",
                                                 const std::string& prop = "p" );

} // namespace plaus
