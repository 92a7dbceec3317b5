#include "plaus/semantics.hpp"

#include "plaus/error.hpp"

#include <unordered_map>

namespace plaus
{

SemanticsMode parse_mode( const std::string& text )
{
    if ( text == "normal" )
        return SemanticsMode::Normal;
    if ( text == "raw" )
        return SemanticsMode::Raw;
    throw ParseError( "semantics must be 'normal' or 'raw', got '" + text + "'" );
}

const char* to_string( SemanticsMode mode ) { return mode == SemanticsMode::Normal ? "normal" : "raw"; }

std::size_t LayerDecomposition::layer_of( std::size_t w ) const
{
    for ( std::size_t i = 0; i < layers.size(); ++i )
        if ( layers[ i ].contains( w ) )
            return i;
    throw SemanticError( "world outside the decomposed class" );
}

LayerDecomposition decompose( const Relation& order, const WorldSet& cls, std::size_t agent )
{
    LayerDecomposition out;
    out.agent = agent;
    out.cls = cls;
    WorldSet rest = cls;
    WorldSet sphere{ cls.universe() };
    while ( !rest.empty() )
    {
        auto layer = min_set( order, rest );
        if ( layer.empty() )
            throw EngineError( "order is not a well-preorder on the class" );
        rest -= layer;
        sphere |= layer;
        out.layers.push_back( std::move( layer ) );
        out.spheres.push_back( sphere );
    }
    out.max_degree = out.layers.empty() ? 0 : out.layers.size() - 1;
    return out;
}

ModelChecker::ModelChecker( PlausibilityModel model, SemanticsMode mode )
        : _state{ std::make_shared<State>( std::move( model ) ) }, _mode{ mode }
{}

ModelChecker ModelChecker::with_mode( SemanticsMode mode ) const { return ModelChecker{ _state, mode }; }

void ModelChecker::ensure( SemanticsMode mode ) const
{
    auto& st = *_state;
    auto fill_layers = [ &st ]( SemanticsMode m, const std::vector<Relation>& orders ) {
        auto& target = st.derived.layers[ m == SemanticsMode::Normal ? 0 : 1 ];
        target.assign( st.model.agent_count(), {} );
        for ( std::size_t a = 0; a < st.model.agent_count(); ++a )
            for ( const auto& cls : st.model.classes( a ) )
                target[ a ].push_back( decompose( orders[ a ], cls, a ) );
    };

    if ( mode == SemanticsMode::Normal )
    {
        std::call_once( st.normal_once, [ & ] {
            st.derived.largest = largest_autobisimulation( st.model );
            for ( std::size_t a = 0; a < st.model.agent_count(); ++a )
                st.derived.normal.push_back( normal_relation( st.model, st.derived.largest, a ) );
            fill_layers( SemanticsMode::Normal, st.derived.normal );
        } );
    }
    else
    {
        std::call_once( st.raw_once, [ & ] {
            std::vector<Relation> raw;
            for ( std::size_t a = 0; a < st.model.agent_count(); ++a )
                raw.push_back( st.model.plaus( a ) );
            fill_layers( SemanticsMode::Raw, raw );
        } );
    }
}

const Relation& ModelChecker::order( std::size_t agent ) const
{
    if ( _mode == SemanticsMode::Raw )
        return model().plaus( agent );
    ensure( SemanticsMode::Normal );
    return _state->derived.normal[ agent ];
}

const EquivRelation& ModelChecker::largest() const
{
    ensure( SemanticsMode::Normal );
    return _state->derived.largest;
}

const LayerDecomposition& ModelChecker::spheres( std::size_t agent, std::size_t w ) const
{
    ensure( _mode );
    const auto& all = _state->derived.layers[ _mode == SemanticsMode::Normal ? 0 : 1 ];
    return all[ agent ][ model().class_id( agent, w ) ];
}

namespace
{

class Evaluator
{
public:
    explicit Evaluator( const ModelChecker& checker ) : _c{ checker }, _m{ checker.model() } {}

    const WorldSet& eval( const FormulaPtr& x )
    {
        auto it = _memo.find( x.get() );
        if ( it != _memo.end() )
            return it->second;
        auto result = compute( *x );
        return _memo.emplace( x.get(), std::move( result ) ).first->second;
    }

private:
    std::size_t agent( const Formula& x ) const
    {
        auto a = _m.find_agent( x.name );
        if ( !a )
            throw SemanticError( "formula mentions unknown agent '" + x.name + "'" );
        return *a;
    }

    // Whole classes of `a` on which `holds_on_class` is true.
    template <typename Pred>
    WorldSet per_class( std::size_t a, Pred holds_on_class )
    {
        WorldSet out{ _m.size() };
        for ( const auto& cls : _m.classes( a ) )
            if ( holds_on_class( cls ) )
                out |= cls;
        return out;
    }

    WorldSet compute( const Formula& x )
    {
        const std::size_t n = _m.size();
        switch ( x.op )
        {
        case Op::Atom:
        {
            WorldSet out{ n };
            for ( std::size_t w = 0; w < n; ++w )
                if ( _m.holds( w, x.name ) )
                    out.insert( w );
            return out;
        }
        case Op::Top: return WorldSet{ n, true };
        case Op::Bot: return WorldSet{ n };
        case Op::Not: return eval( x.lhs ).complement();
        case Op::And: return eval( x.lhs ) & eval( x.rhs );
        case Op::Or: return eval( x.lhs ) | eval( x.rhs );
        case Op::Implies: return eval( x.lhs ).complement() | eval( x.rhs );
        case Op::Know:
        {
            const auto a = agent( x );
            const auto& body = eval( x.lhs );
            return per_class( a, [ & ]( const WorldSet& cls ) { return cls.subset_of( body ); } );
        }
        case Op::CondBelief:
        {
            const auto a = agent( x );
            const WorldSet cond = eval( x.lhs );
            const auto& body = eval( x.rhs );
            return per_class( a, [ & ]( const WorldSet& cls ) {
                return min_set( _m.plaus( a ), cond & cls ).subset_of( body );
            } );
        }
        case Op::DegBelief:
        {
            const auto a = agent( x );
            const auto& body = eval( x.lhs );
            return per_class( a, [ & ]( const WorldSet& cls ) {
                return _c.spheres( a, cls.first() ).sphere( x.degree ).subset_of( body );
            } );
        }
        case Op::SafeBelief:
        {
            const auto a = agent( x );
            const auto& body = eval( x.lhs );
            const auto& order = _c.order( a );
            WorldSet out{ n };
            for ( std::size_t w = 0; w < n; ++w )
                if ( order.image( w ).subset_of( body ) )
                    out.insert( w );
            return out;
        }
        }
        throw EngineError( "unhandled formula node" );
    }

    const ModelChecker& _c;
    const PlausibilityModel& _m;
    std::unordered_map<const Formula*, WorldSet> _memo;
};

} // namespace

WorldSet ModelChecker::extension( const FormulaPtr& f ) const
{
    Evaluator ev{ *this };
    return ev.eval( f );
}

bool ModelChecker::satisfies( std::size_t w, const FormulaPtr& f ) const
{
    if ( w >= model().size() )
        throw SemanticError( "world index out of range" );
    return extension( f ).contains( w );
}

bool ModelChecker::valid( const FormulaPtr& f ) const { return extension( f ).count() == model().size(); }

bool satisfies( const PlausibilityModel& model, std::size_t w, const FormulaPtr& f, SemanticsMode mode )
{
    return ModelChecker{ model, mode }.satisfies( w, f );
}

WorldSet extension( const PlausibilityModel& model, const FormulaPtr& f, SemanticsMode mode )
{
    return ModelChecker{ model, mode }.extension( f );
}

bool valid_on_model( const PlausibilityModel& model, const FormulaPtr& f, SemanticsMode mode )
{
    return ModelChecker{ model, mode }.valid( f );
}

LayerDecomposition spheres( const PlausibilityModel& model, std::size_t agent, std::size_t w, SemanticsMode mode )
{
    return ModelChecker{ model, mode }.spheres( agent, w );
}

FormulaPtr demey_counting_formula( std::size_t n, const std::string& agent, const std::string& prop )
{
    FormulaPtr phi = f::top();
    for ( std::size_t i = 1; i <= n; ++i )
    {
        auto lit = i % 2 == 0 ? f::atom( prop ) : f::neg( f::atom( prop ) );
        phi = f::diamond( agent, f::conj( phi, lit ) );
    }
    return phi;
}

} // namespace plaus
