#include "plaus/bisim.hpp"

#include "plaus/error.hpp"
#include "plaus/semantics.hpp"

#include <algorithm>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>

namespace plaus
{

// ---------------------------------------------------------------------------
// EquivRelation

EquivRelation::EquivRelation( std::vector<std::size_t> rep ) : _rep{ std::move( rep ) }
{
    const std::size_t n = _rep.size();
    _block_of.assign( n, 0 );
    std::vector<std::size_t> index_of_rep( n, n );
    for ( std::size_t w = 0; w < n; ++w )
    {
        const std::size_t r = _rep[ w ];
        if ( index_of_rep[ r ] == n )
        {
            index_of_rep[ r ] = _blocks.size();
            _blocks.emplace_back( n );
        }
        _block_of[ w ] = index_of_rep[ r ];
        _blocks[ index_of_rep[ r ] ].insert( w );
    }
}

EquivRelation EquivRelation::identity( std::size_t n )
{
    std::vector<std::size_t> rep( n );
    std::iota( rep.begin(), rep.end(), std::size_t{ 0 } );
    return EquivRelation{ std::move( rep ) };
}

EquivRelation EquivRelation::full( std::size_t n ) { return EquivRelation{ std::vector<std::size_t>( n, 0 ) }; }

Relation EquivRelation::as_relation() const
{
    Relation r{ size() };
    for ( std::size_t x = 0; x < size(); ++x )
        for ( std::size_t y = 0; y < size(); ++y )
            if ( related( x, y ) )
                r.insert( x, y );
    return r;
}

bool EquivRelation::refines( const EquivRelation& other ) const
{
    for ( std::size_t w = 0; w < size(); ++w )
        if ( !other.related( w, _rep[ w ] ) )
            return false;
    return true;
}

EquivRelation equivalence_closure( std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& pairs )
{
    std::vector<std::size_t> parent( n );
    std::iota( parent.begin(), parent.end(), std::size_t{ 0 } );
    auto root = [ &parent ]( std::size_t x ) {
        while ( parent[ x ] != x )
            x = parent[ x ] = parent[ parent[ x ] ];
        return x;
    };
    for ( auto [ x, y ] : pairs )
    {
        if ( x >= n || y >= n )
            throw SemanticError( "relation mentions a world outside the model" );
        const auto rx = root( x ), ry = root( y );
        // Keep the smaller index as root so roots are least members.
        if ( rx < ry )
            parent[ ry ] = rx;
        else
            parent[ rx ] = ry;
    }
    std::vector<std::size_t> labels( n );
    for ( std::size_t w = 0; w < n; ++w )
        labels[ w ] = root( w );
    return EquivRelation::from_labels( labels );
}

EquivRelation equivalence_closure( const Relation& r ) { return equivalence_closure( r.universe(), r.pairs() ); }

EquivRelation equivalence_closure( const PlausibilityModel& model,
                                   const std::vector<std::pair<std::string, std::string>>& pairs )
{
    std::vector<std::pair<std::size_t, std::size_t>> idx;
    for ( const auto& [ x, y ] : pairs )
        idx.emplace_back( model.world_index( x ), model.world_index( y ) );
    return equivalence_closure( model.size(), idx );
}

// ---------------------------------------------------------------------------
// Derived relation and the clause check

Relation derived_relation( const PlausibilityModel& model, const EquivRelation& r, std::size_t agent )
{
    const std::size_t n = model.size();
    std::vector<WorldSet> mins;
    mins.reserve( n );
    for ( std::size_t w = 0; w < n; ++w )
        mins.push_back( min_set( model.plaus( agent ), r.block( w ) & model.epistemic_class( agent, w ) ) );

    Relation out{ n };
    for ( std::size_t w = 0; w < n; ++w )
        for ( std::size_t v = 0; v < n; ++v )
            if ( set_leq( model, agent, mins[ w ], mins[ v ] ) )
                out.insert( w, v );
    return out;
}

Relation derived_relation( const PlausibilityModel& model, const Relation& r, std::size_t agent )
{
    return derived_relation( model, equivalence_closure( r ), agent );
}

const char* clause_name( Clause c )
{
    switch ( c )
    {
    case Clause::Atoms: return "atoms";
    case Clause::ForthGeq: return "forth>=";
    case Clause::BackGeq: return "back>=";
    case Clause::ForthLeq: return "forth<=";
    case Clause::BackLeq: return "back<=";
    }
    return "?";
}

BisimReport check_autobisimulation( const PlausibilityModel& model, const Relation& r )
{
    BisimReport report;
    const std::size_t n = model.size();
    const auto closed = equivalence_closure( r );
    std::vector<Relation> derived;
    for ( std::size_t a = 0; a < model.agent_count(); ++a )
        derived.push_back( derived_relation( model, closed, a ) );

    auto fail = [ &report ]( Clause c, std::size_t a, std::size_t w, std::size_t w2, std::size_t witness ) {
        report.ok = false;
        report.violations.push_back( { c, a, w, w2, witness } );
    };

    for ( auto [ w, w2 ] : r.pairs() )
    {
        if ( model.valuation( w ) != model.valuation( w2 ) )
            fail( Clause::Atoms, 0, w, w2, w );

        for ( std::size_t a = 0; a < model.agent_count(); ++a )
        {
            const auto& d = derived[ a ];
            for ( std::size_t v = 0; v < n; ++v )
            {
                auto matched = [ & ]( auto pred ) {
                    for ( std::size_t u = 0; u < n; ++u )
                        if ( pred( u ) )
                            return true;
                    return false;
                };
                if ( d.contains( w, v ) && !matched( [ & ]( std::size_t v2 ) { return d.contains( w2, v2 ) && r.contains( v, v2 ); } ) )
                    fail( Clause::ForthGeq, a, w, w2, v );
                if ( d.contains( w2, v ) && !matched( [ & ]( std::size_t u ) { return d.contains( w, u ) && r.contains( u, v ); } ) )
                    fail( Clause::BackGeq, a, w, w2, v );
                if ( d.contains( v, w ) && !matched( [ & ]( std::size_t v2 ) { return d.contains( v2, w2 ) && r.contains( v, v2 ); } ) )
                    fail( Clause::ForthLeq, a, w, w2, v );
                if ( d.contains( v, w2 ) && !matched( [ & ]( std::size_t u ) { return d.contains( u, w ) && r.contains( u, v ); } ) )
                    fail( Clause::BackLeq, a, w, w2, v );
            }
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// Signature refinement

namespace
{

/// One signature entry: does a world reach block `target` under the derived
/// order of `agent` (or, with `converse`, is it reached from there)?
struct Component
{
    std::size_t agent;
    bool converse;
    std::size_t target;
};

struct Signatures
{
    std::size_t blocks = 0;
    std::size_t agents = 0;
    std::vector<std::vector<bool>> bits; // per world

    [[nodiscard]] std::size_t index( const Component& c ) const
    {
        return ( c.agent * 2 + ( c.converse ? 1 : 0 ) ) * blocks + c.target;
    }
    [[nodiscard]] Component component( std::size_t i ) const
    {
        const std::size_t target = i % blocks;
        const std::size_t rest = i / blocks;
        return { rest / 2, rest % 2 == 1, target };
    }
};

Signatures signatures( const PlausibilityModel& model, const EquivRelation& p )
{
    Signatures s;
    s.blocks = p.block_count();
    s.agents = model.agent_count();
    const std::size_t n = model.size();
    s.bits.assign( n, std::vector<bool>( s.agents * 2 * s.blocks, false ) );
    for ( std::size_t a = 0; a < s.agents; ++a )
    {
        const auto d = derived_relation( model, p, a );
        for ( std::size_t w = 0; w < n; ++w )
            for ( std::size_t v = 0; v < n; ++v )
            {
                if ( d.contains( w, v ) )
                    s.bits[ w ][ s.index( { a, false, p.block_of( v ) } ) ] = true;
                if ( d.contains( v, w ) )
                    s.bits[ w ][ s.index( { a, true, p.block_of( v ) } ) ] = true;
            }
    }
    return s;
}

EquivRelation valuation_partition( const PlausibilityModel& model )
{
    std::vector<Valuation> labels;
    for ( std::size_t w = 0; w < model.size(); ++w )
        labels.push_back( model.valuation( w ) );
    return EquivRelation::from_labels( labels );
}

EquivRelation refine_once( const EquivRelation& p, const Signatures& s )
{
    std::vector<std::pair<std::size_t, std::vector<bool>>> labels;
    for ( std::size_t w = 0; w < p.size(); ++w )
        labels.emplace_back( p.block_of( w ), s.bits[ w ] );
    return EquivRelation::from_labels( labels );
}

/// Characteristic formulas of the blocks of each round, built alongside the
/// refinement. chi[r][b] holds exactly on block b of round r.
struct Witnesses
{
    std::vector<EquivRelation> rounds;
    std::vector<Signatures> sigs; // sigs[r] computed on rounds[r]
    std::vector<std::vector<FormulaPtr>> chi;
};

// Within block C: "reaches D" under the derived order, or "is reached from D".
FormulaPtr component_formula( const PlausibilityModel& model, const FormulaPtr& chi_c, const FormulaPtr& chi_d,
                              const Component& c )
{
    const auto& agent = model.agent( c.agent );
    auto cond = chi_c == chi_d ? chi_c : f::disj( chi_c, chi_d );
    if ( !c.converse )
        return f::bhat( agent, cond, chi_d );
    return f::conj( f::bhat( agent, cond, chi_c ), f::khat( agent, chi_d ) );
}

FormulaPtr literal( const FormulaPtr& x, bool positive ) { return positive ? x : f::neg( x ); }

std::vector<FormulaPtr> valuation_formulas( const PlausibilityModel& model, const EquivRelation& p )
{
    const auto props = model.propositions();
    std::vector<FormulaPtr> out;
    for ( const auto& block : p.blocks() )
    {
        const std::size_t w = block.first();
        FormulaPtr chi;
        for ( const auto& prop : props )
        {
            auto lit = literal( f::atom( prop ), model.holds( w, prop ) );
            chi = chi ? f::conj( chi, lit ) : lit;
        }
        out.push_back( chi ? chi : f::top() );
    }
    return out;
}

Witnesses run_refinement( const PlausibilityModel& model, bool with_formulas )
{
    Witnesses out;
    out.rounds.push_back( valuation_partition( model ) );
    if ( with_formulas )
        out.chi.push_back( valuation_formulas( model, out.rounds.back() ) );

    while ( true )
    {
        const auto& p = out.rounds.back();
        out.sigs.push_back( signatures( model, p ) );
        const auto& s = out.sigs.back();
        auto next = refine_once( p, s );
        if ( next.block_count() == p.block_count() )
            break;

        if ( with_formulas )
        {
            const auto& chi = out.chi.back();
            std::vector<FormulaPtr> next_chi;
            for ( const auto& block : next.blocks() )
            {
                const std::size_t w = block.first();
                const auto& old_block = p.block( w );
                const std::size_t c = p.block_of( w );
                if ( block == old_block )
                {
                    next_chi.push_back( chi[ c ] );
                    continue;
                }
                FormulaPtr x = chi[ c ];
                for ( std::size_t i = 0; i < s.bits[ w ].size(); ++i )
                {
                    bool varies = false;
                    for ( std::size_t u : old_block.members() )
                        varies = varies || s.bits[ u ][ i ] != s.bits[ w ][ i ];
                    if ( !varies )
                        continue;
                    const auto comp = s.component( i );
                    x = f::conj( x, literal( component_formula( model, chi[ c ], chi[ comp.target ], comp ), s.bits[ w ][ i ] ) );
                }
                next_chi.push_back( x );
            }
            out.chi.push_back( std::move( next_chi ) );
        }
        out.rounds.push_back( std::move( next ) );
    }
    return out;
}

} // namespace

std::vector<EquivRelation> refinement_rounds( const PlausibilityModel& model )
{
    return run_refinement( model, false ).rounds;
}

EquivRelation largest_autobisimulation( const PlausibilityModel& model, const LargestOptions& opts )
{
    auto result = run_refinement( model, false ).rounds.back();
    if ( check_autobisimulation( model, result.as_relation() ).ok )
        return result;

    std::cerr << "plaus: refinement fixpoint failed verification on a " << model.size() << "-world model\n";
    if ( model.size() > opts.max_brute )
        throw EngineError( "refinement fixpoint is not an autobisimulation and the model exceeds the enumeration bound" );
    return brute_force_largest( model, opts.max_brute );
}

EquivRelation brute_force_largest( const PlausibilityModel& model, std::size_t max_worlds )
{
    const std::size_t n = model.size();
    if ( n > max_worlds )
        throw BoundExceeded( "enumeration limited to " + std::to_string( max_worlds ) + " worlds, model has "
                             + std::to_string( n ) );
    if ( n == 0 )
        return EquivRelation::identity( 0 );

    std::vector<EquivRelation> passing;
    // Restricted growth strings: label[0] = 0, label[i] <= 1 + max(label[0..i)).
    std::vector<std::size_t> label( n, 0 );
    std::vector<std::size_t> prefix_max( n, 0 );
    while ( true )
    {
        auto candidate = EquivRelation::from_labels( label );
        if ( check_autobisimulation( model, candidate.as_relation() ).ok )
            passing.push_back( std::move( candidate ) );

        std::size_t i = n - 1;
        while ( i > 0 && label[ i ] == prefix_max[ i - 1 ] + 1 )
            --i;
        if ( i == 0 )
            break;
        ++label[ i ];
        prefix_max[ i ] = std::max( prefix_max[ i - 1 ], label[ i ] );
        for ( std::size_t j = i + 1; j < n; ++j )
        {
            label[ j ] = 0;
            prefix_max[ j ] = prefix_max[ i ];
        }
    }

    const auto best = std::min_element( passing.begin(), passing.end(), []( const auto& x, const auto& y ) {
        return x.block_count() < y.block_count();
    } );
    for ( const auto& other : passing )
        if ( !other.refines( *best ) )
            throw EngineError( "autobisimulations have no unique coarsest element" );
    return *best;
}

Relation normal_relation( const PlausibilityModel& model, const EquivRelation& largest, std::size_t agent )
{
    return derived_relation( model, largest, agent );
}

Relation normal_relation( const PlausibilityModel& model, std::size_t agent )
{
    return normal_relation( model, largest_autobisimulation( model ), agent );
}

PlausibilityModel normalize( const PlausibilityModel& model )
{
    const auto largest = largest_autobisimulation( model );
    std::vector<Relation> rel;
    for ( std::size_t a = 0; a < model.agent_count(); ++a )
        rel.push_back( normal_relation( model, largest, a ) );
    return model.with_relations( std::move( rel ) );
}

Contraction contract( const PlausibilityModel& model )
{
    const auto largest = largest_autobisimulation( model );
    auto name = [ & ]( std::size_t w ) { return "c:" + model.world( largest.rep( w ) ); };

    ModelBuilder b;
    for ( const auto& a : model.agents() )
        b.agent( a );
    for ( const auto& block : largest.blocks() )
        b.world( name( block.first() ), model.valuation( block.first() ) );
    for ( std::size_t a = 0; a < model.agent_count(); ++a )
    {
        const auto d = derived_relation( model, largest, a );
        for ( auto [ w, v ] : d.pairs() )
            if ( !largest.related( w, v ) )
                b.edge( model.agent( a ), name( w ), name( v ) );
    }

    Contraction out{ b.build(), {} };
    for ( std::size_t w = 0; w < model.size(); ++w )
        out.quotient.push_back( out.model.world_index( name( w ) ) );
    return out;
}

BisimResult bisimilar( const PlausibilityModel& m1, std::size_t w1, const PlausibilityModel& m2, std::size_t w2 )
{
    const auto u = disjoint_union( m1, m2 );
    const auto largest = largest_autobisimulation( u.model );
    BisimResult out;
    out.bisimilar = largest.related( u.left[ w1 ], u.right[ w2 ] );
    for ( std::size_t x = 0; x < m1.size(); ++x )
        for ( std::size_t y = 0; y < m2.size(); ++y )
            if ( largest.related( u.left[ x ], u.right[ y ] ) )
                out.relation.emplace_back( x, y );
    return out;
}

// ---------------------------------------------------------------------------
// Distinguishing formulas

namespace
{

FormulaPtr replace_at( const FormulaPtr& x, const std::vector<int>& path, std::size_t depth, bool keep_left )
{
    if ( depth == path.size() )
        return keep_left ? x->lhs : x->rhs;
    auto lhs = x->lhs, rhs = x->rhs;
    if ( path[ depth ] == 0 )
        lhs = replace_at( lhs, path, depth + 1, keep_left );
    else
        rhs = replace_at( rhs, path, depth + 1, keep_left );
    return std::make_shared<const Formula>( Formula{ x->op, x->name, x->degree, lhs, rhs } );
}

void and_paths( const FormulaPtr& x, std::vector<int>& path, std::vector<std::vector<int>>& out, std::size_t limit )
{
    if ( !x || out.size() >= limit )
        return;
    if ( x->op == Op::And )
        out.push_back( path );
    path.push_back( 0 );
    and_paths( x->lhs, path, out, limit );
    path.back() = 1;
    and_paths( x->rhs, path, out, limit );
    path.pop_back();
}

// Greedy: drop one conjunct at a time while the formula still separates.
FormulaPtr simplify( FormulaPtr x, const std::function<bool( const FormulaPtr& )>& separates )
{
    std::size_t budget = 400;
    bool progress = true;
    while ( progress && budget > 0 )
    {
        progress = false;
        std::vector<std::vector<int>> paths;
        std::vector<int> scratch;
        and_paths( x, scratch, paths, 64 );
        for ( const auto& path : paths )
        {
            for ( bool keep_left : { true, false } )
            {
                if ( budget == 0 )
                    break;
                --budget;
                auto candidate = replace_at( x, path, 0, keep_left );
                if ( separates( candidate ) )
                {
                    x = std::move( candidate );
                    progress = true;
                    break;
                }
            }
            if ( progress )
                break;
        }
    }
    return x;
}

} // namespace

FormulaPtr distinguishing_formula( const PlausibilityModel& model, std::size_t w, std::size_t w2 )
{
    const auto trace = run_refinement( model, true );
    std::size_t round = 0;
    while ( round < trace.rounds.size() && trace.rounds[ round ].related( w, w2 ) )
        ++round;
    if ( round == trace.rounds.size() )
        throw SemanticError( "worlds " + model.world( w ) + " and " + model.world( w2 ) + " are bisimilar" );

    FormulaPtr result;
    if ( round == 0 )
    {
        for ( const auto& p : model.valuation( w ) )
            if ( !model.holds( w2, p ) )
                result = f::atom( p );
        if ( !result )
            for ( const auto& p : model.valuation( w2 ) )
                if ( !model.holds( w, p ) )
                    result = f::neg( f::atom( p ) );
    }
    else
    {
        const auto& p = trace.rounds[ round - 1 ];
        const auto& s = trace.sigs[ round - 1 ];
        const auto& chi = trace.chi[ round - 1 ];
        for ( std::size_t i = 0; i < s.bits[ w ].size() && !result; ++i )
        {
            if ( s.bits[ w ][ i ] == s.bits[ w2 ][ i ] )
                continue;
            const auto comp = s.component( i );
            result = literal( component_formula( model, chi[ p.block_of( w ) ], chi[ comp.target ], comp ), s.bits[ w ][ i ] );
        }
    }

    const ModelChecker checker{ model };
    auto separates = [ & ]( const FormulaPtr& x ) { return checker.satisfies( w, x ) && !checker.satisfies( w2, x ); };
    if ( !result || !separates( result ) )
        throw EngineError( "distinguishing formula failed verification" );
    return simplify( result, separates );
}

} // namespace plaus
