#include "plaus/translate.hpp"

#include "plaus/error.hpp"

#include <map>
#include <unordered_map>
#include <utility>
#include <vector>

namespace plaus
{

namespace
{

void require_conditional( const FormulaPtr& f )
{
    if ( !classify( f ).subset_of( LanguageTag::from_letters( "C" ) ) )
        throw SemanticError( "formula is not in the conditional-belief language: " + to_string( f ) );
}

FormulaPtr rebuild( const FormulaPtr& x, FormulaPtr lhs, FormulaPtr rhs )
{
    if ( lhs == x->lhs && rhs == x->rhs )
        return x;
    return std::make_shared<const Formula>( Formula{ x->op, x->name, x->degree, std::move( lhs ), std::move( rhs ) } );
}

FormulaPtr safe_rec( const FormulaPtr& x, std::unordered_map<const Formula*, FormulaPtr>& memo )
{
    if ( !x )
        return x;
    if ( auto it = memo.find( x.get() ); it != memo.end() )
        return it->second;
    FormulaPtr out;
    if ( x->op == Op::CondBelief )
    {
        auto psi = safe_rec( x->lhs, memo );
        auto phi = safe_rec( x->rhs, memo );
        out = f::implies( f::khat( x->name, psi ),
                          f::khat( x->name, f::conj( psi, f::safe( x->name, f::implies( psi, phi ) ) ) ) );
    }
    else
        out = rebuild( x, safe_rec( x->lhs, memo ), safe_rec( x->rhs, memo ) );
    memo.emplace( x.get(), out );
    return out;
}

FormulaPtr knowledge_rec( const FormulaPtr& x, std::unordered_map<const Formula*, FormulaPtr>& memo )
{
    if ( !x )
        return x;
    if ( auto it = memo.find( x.get() ); it != memo.end() )
        return it->second;
    FormulaPtr out;
    if ( x->op == Op::Know )
        out = f::cond( x->name, f::neg( knowledge_rec( x->lhs, memo ) ), f::bot() );
    else
        out = rebuild( x, knowledge_rec( x->lhs, memo ), knowledge_rec( x->rhs, memo ) );
    memo.emplace( x.get(), out );
    return out;
}

class DegreeTranslator
{
public:
    explicit DegreeTranslator( const ModelChecker& checker ) : _c{ checker }, _m{ checker.model() } {}

    FormulaPtr sigma( std::size_t w, const FormulaPtr& x )
    {
        const auto key = std::make_pair( w, x.get() );
        if ( auto it = _memo.find( key ); it != _memo.end() )
            return it->second;
        auto out = compute( w, x );
        _memo.emplace( key, out );
        return out;
    }

private:
    FormulaPtr compute( std::size_t w, const FormulaPtr& x )
    {
        switch ( x->op )
        {
        case Op::Atom:
        case Op::Top:
        case Op::Bot: return x;
        case Op::Not: return f::neg( sigma( w, x->lhs ) );
        case Op::And:
        case Op::Or:
        case Op::Implies: return rebuild( x, sigma( w, x->lhs ), sigma( w, x->rhs ) );
        case Op::Know:
        {
            auto& negated = _negated[ x.get() ];
            if ( !negated )
                negated = f::neg( x->lhs );
            return conditional( w, x->name, negated, f::bot() );
        }
        case Op::CondBelief: return conditional( w, x->name, x->lhs, x->rhs );
        case Op::DegBelief:
        case Op::SafeBelief: break;
        }
        throw SemanticError( "formula is not in the conditional-belief language" );
    }

    FormulaPtr conditional( std::size_t w, const std::string& agent_name, const FormulaPtr& psi, const FormulaPtr& phi )
    {
        const auto a = _m.agent_index( agent_name );
        const auto& cls = _m.epistemic_class( a, w );
        const auto members = cls.members();

        if ( ( extension_of( psi ) & cls ).empty() )
            return f::know( agent_name, big_or( members, [ & ]( std::size_t v ) { return f::neg( sigma( v, psi ) ); } ) );

        const std::size_t k = layer_index( _c, w, a, psi );
        auto impl = big_or( members, [ & ]( std::size_t v ) { return f::implies( sigma( v, psi ), sigma( v, phi ) ); } );
        auto cond = big_or( members, [ & ]( std::size_t v ) { return sigma( v, psi ); } );
        return f::conj( f::deg( agent_name, k, impl ), f::bhat_deg( agent_name, k, cond ) );
    }

    const WorldSet& extension_of( const FormulaPtr& x )
    {
        auto it = _ext.find( x.get() );
        if ( it == _ext.end() )
            it = _ext.emplace( x.get(), _c.extension( x ) ).first;
        return it->second;
    }

    template <typename Make>
    FormulaPtr big_or( const std::vector<std::size_t>& members, Make make )
    {
        std::map<std::string, FormulaPtr> disjuncts;
        for ( std::size_t v : members )
        {
            auto d = make( v );
            disjuncts.emplace( to_string( d ), d );
        }
        if ( disjuncts.empty() )
            throw EngineError( "empty disjunction in translation" );
        FormulaPtr out;
        for ( auto it = disjuncts.rbegin(); it != disjuncts.rend(); ++it )
            out = out ? f::disj( it->second, out ) : it->second;
        return out;
    }

    const ModelChecker& _c;
    const PlausibilityModel& _m;
    // The caches are keyed by node address; _negated owns the only nodes
    // created here that are fed back into them.
    std::map<std::pair<std::size_t, const Formula*>, FormulaPtr> _memo;
    std::unordered_map<const Formula*, FormulaPtr> _negated;
    std::unordered_map<const Formula*, WorldSet> _ext;
};

} // namespace

FormulaPtr cond_to_safe( const FormulaPtr& f )
{
    require_conditional( f );
    std::unordered_map<const Formula*, FormulaPtr> memo;
    return safe_rec( f, memo );
}

FormulaPtr expand_knowledge( const FormulaPtr& f )
{
    std::unordered_map<const Formula*, FormulaPtr> memo;
    return knowledge_rec( f, memo );
}

std::size_t layer_index( const ModelChecker& checker, std::size_t w, std::size_t agent, const FormulaPtr& psi )
{
    const auto& model = checker.model();
    const auto& cls = model.epistemic_class( agent, w );
    const auto region = checker.extension( psi ) & cls;
    if ( region.empty() )
        throw SemanticError( "condition holds nowhere in the epistemic class" );
    const auto minimal = min_set( model.plaus( agent ), region );

    const auto normal = checker.with_mode( SemanticsMode::Normal );
    const auto& layers = normal.spheres( agent, w );
    std::size_t found = layers.layers.size();
    for ( std::size_t k = 0; k < layers.layers.size(); ++k )
    {
        if ( !( minimal & layers.layers[ k ] ).empty() )
        {
            if ( found != layers.layers.size() || !minimal.subset_of( layers.layers[ k ] ) )
                throw EngineError( "minimal condition worlds straddle several belief layers" );
            found = k;
        }
    }
    return found;
}

FormulaPtr cond_to_degrees( const ModelChecker& checker, std::size_t w, const FormulaPtr& f )
{
    require_conditional( f );
    const auto normal = checker.with_mode( SemanticsMode::Normal );
    DegreeTranslator t{ normal };
    return t.sigma( w, f );
}

FormulaPtr cond_to_degrees( const PlausibilityModel& model, std::size_t w, const FormulaPtr& f )
{
    return cond_to_degrees( ModelChecker{ model }, w, f );
}

} // namespace plaus
