#include "plaus/oracle.hpp"

#include "plaus/error.hpp"
#include "plaus/semantics.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace plaus::oracle
{

namespace
{

using Labels = std::vector<std::size_t>;

/// Symmetric-transitive closure of >=_a, by search from each world.
std::vector<std::vector<bool>> naive_indistinguishable( const PlausibilityModel& m, std::size_t a )
{
    const std::size_t n = m.size();
    std::vector<std::vector<bool>> out( n, std::vector<bool>( n, false ) );
    for ( std::size_t s = 0; s < n; ++s )
    {
        std::vector<std::size_t> stack{ s };
        out[ s ][ s ] = true;
        while ( !stack.empty() )
        {
            const std::size_t x = stack.back();
            stack.pop_back();
            for ( std::size_t y = 0; y < n; ++y )
                if ( !out[ s ][ y ] && ( m.geq( a, x, y ) || m.geq( a, y, x ) ) )
                {
                    out[ s ][ y ] = true;
                    stack.push_back( y );
                }
        }
    }
    return out;
}

/// geq[w][v]: the derived order of agent a for the partition given by labels.
std::vector<std::vector<bool>> naive_derived( const PlausibilityModel& m, std::size_t a, const Labels& labels,
                                              const std::vector<std::vector<bool>>& sim )
{
    const std::size_t n = m.size();
    std::vector<std::vector<std::size_t>> mins( n );
    for ( std::size_t w = 0; w < n; ++w )
    {
        std::vector<std::size_t> region;
        for ( std::size_t y = 0; y < n; ++y )
            if ( labels[ y ] == labels[ w ] && sim[ w ][ y ] )
                region.push_back( y );
        for ( std::size_t y : region )
            if ( std::all_of( region.begin(), region.end(), [ & ]( std::size_t y2 ) { return m.geq( a, y2, y ); } ) )
                mins[ w ].push_back( y );
    }
    std::vector<std::vector<bool>> out( n, std::vector<bool>( n, true ) );
    for ( std::size_t w = 0; w < n; ++w )
        for ( std::size_t v = 0; v < n; ++v )
            for ( std::size_t x : mins[ w ] )
                for ( std::size_t y : mins[ v ] )
                    if ( !m.geq( a, x, y ) )
                        out[ w ][ v ] = false;
    return out;
}

} // namespace

bool naive_is_autobisimulation( const PlausibilityModel& m, const Labels& labels )
{
    const std::size_t n = m.size();
    auto in_r = [ & ]( std::size_t x, std::size_t y ) { return labels[ x ] == labels[ y ]; };

    for ( std::size_t w = 0; w < n; ++w )
        for ( std::size_t w2 = 0; w2 < n; ++w2 )
            if ( in_r( w, w2 ) && m.valuation( w ) != m.valuation( w2 ) )
                return false;

    for ( std::size_t a = 0; a < m.agent_count(); ++a )
    {
        const auto sim = naive_indistinguishable( m, a );
        const auto ge = naive_derived( m, a, labels, sim );
        auto le = [ &ge ]( std::size_t x, std::size_t y ) { return ge[ y ][ x ]; };
        for ( std::size_t w = 0; w < n; ++w )
            for ( std::size_t w2 = 0; w2 < n; ++w2 )
            {
                if ( !in_r( w, w2 ) )
                    continue;
                for ( std::size_t v = 0; v < n; ++v )
                {
                    bool f_ge = !ge[ w ][ v ], b_ge = !ge[ w2 ][ v ], f_le = !le( w, v ), b_le = !le( w2, v );
                    for ( std::size_t u = 0; u < n; ++u )
                    {
                        f_ge = f_ge || ( ge[ w2 ][ u ] && in_r( v, u ) );
                        b_ge = b_ge || ( ge[ w ][ u ] && in_r( u, v ) );
                        f_le = f_le || ( le( w2, u ) && in_r( v, u ) );
                        b_le = b_le || ( le( w, u ) && in_r( u, v ) );
                    }
                    if ( !( f_ge && b_ge && f_le && b_le ) )
                        return false;
                }
            }
    }
    return true;
}

EquivRelation oracle_largest( const PlausibilityModel& model, std::size_t max_worlds )
{
    const std::size_t n = model.size();
    if ( n > max_worlds )
        throw BoundExceeded( "oracle enumeration limited to " + std::to_string( max_worlds ) + " worlds, model has "
                             + std::to_string( n ) );

    std::vector<Labels> passing;
    Labels labels( n, 0 );
    // Depth-first over restricted growth strings.
    auto visit = [ & ]( auto&& self, std::size_t i, std::size_t used ) -> void {
        if ( i == n )
        {
            if ( naive_is_autobisimulation( model, labels ) )
                passing.push_back( labels );
            return;
        }
        for ( std::size_t l = 0; l <= used; ++l )
        {
            labels[ i ] = l;
            self( self, i + 1, std::max( used, l + 1 ) );
        }
    };
    if ( n > 0 )
    {
        labels[ 0 ] = 0;
        visit( visit, 1, 1 );
    }
    else
        passing.push_back( labels );

    // The coarsest passing partition relates every pair any passing one does.
    for ( const auto& candidate : passing )
    {
        bool coarsest = true;
        for ( const auto& other : passing )
            for ( std::size_t x = 0; x < n && coarsest; ++x )
                for ( std::size_t y = 0; y < n && coarsest; ++y )
                    if ( other[ x ] == other[ y ] && candidate[ x ] != candidate[ y ] )
                        coarsest = false;
        if ( coarsest )
            return EquivRelation::from_labels( candidate );
    }
    throw EngineError( "no coarsest autobisimulation among the enumerated partitions" );
}

namespace
{

const char* const agent_names[] = { "a", "b", "c" };
const char* const prop_names[] = { "p", "q", "r", "s" };

std::size_t uniform( std::mt19937_64& rng, std::size_t lo, std::size_t hi )
{
    return std::uniform_int_distribution<std::size_t>{ lo, hi }( rng );
}

} // namespace

PlausibilityModel random_model( std::mt19937_64& rng, const ModelBounds& bounds )
{
    const std::size_t n = uniform( rng, 1, std::max<std::size_t>( 1, std::min<std::size_t>( bounds.max_worlds, 8 ) ) );
    const std::size_t agents = uniform( rng, 1, std::max<std::size_t>( 1, std::min<std::size_t>( bounds.max_agents, 3 ) ) );
    const std::size_t props = uniform( rng, 1, std::max<std::size_t>( 1, std::min<std::size_t>( bounds.max_props, 4 ) ) );

    // A small pool of valuations makes coinciding worlds, and so non-trivial
    // bisimulations, common.
    const std::size_t pool_size = uniform( rng, 1, std::min<std::size_t>( n, std::size_t{ 1 } << props ) );
    std::vector<Valuation> pool;
    for ( std::size_t i = 0; i < pool_size; ++i )
    {
        Valuation v;
        for ( std::size_t p = 0; p < props; ++p )
            if ( uniform( rng, 0, 1 ) == 1 )
                v.insert( prop_names[ p ] );
        pool.push_back( std::move( v ) );
    }

    ModelBuilder b;
    std::vector<std::string> ids;
    for ( std::size_t w = 0; w < n; ++w )
    {
        ids.push_back( "w" + std::to_string( w ) );
        b.world( ids.back(), pool[ uniform( rng, 0, pool_size - 1 ) ] );
    }
    for ( std::size_t a = 0; a < agents; ++a )
    {
        const std::string agent = agent_names[ a ];
        b.agent( agent );
        const std::size_t class_count = uniform( rng, 1, n );
        std::vector<std::size_t> cls( n ), level( n );
        for ( std::size_t w = 0; w < n; ++w )
        {
            cls[ w ] = uniform( rng, 0, class_count - 1 );
            level[ w ] = uniform( rng, 0, n - 1 );
        }
        // Higher level means less plausible.
        for ( std::size_t x = 0; x < n; ++x )
            for ( std::size_t y = 0; y < n; ++y )
                if ( x != y && cls[ x ] == cls[ y ] && level[ x ] >= level[ y ] )
                    b.edge( agent, ids[ x ], ids[ y ] );
    }
    return b.build();
}

PlausibilityModel random_model( std::uint64_t seed, const ModelBounds& bounds )
{
    std::mt19937_64 rng{ seed };
    return random_model( rng, bounds );
}

namespace
{

FormulaPtr gen( std::mt19937_64& rng, const FormulaBounds& b, std::size_t depth )
{
    const auto atom = [ & ] { return f::atom( b.props[ uniform( rng, 0, b.props.size() - 1 ) ] ); };
    const auto agent = [ & ] { return b.agents[ uniform( rng, 0, b.agents.size() - 1 ) ]; };

    if ( depth == 0 || uniform( rng, 0, 4 ) == 0 )
    {
        switch ( uniform( rng, 0, 9 ) )
        {
        case 0: return f::top();
        case 1: return f::bot();
        case 2:
        case 3: return f::neg( atom() );
        default: return atom();
        }
    }

    std::vector<int> choices{ 0, 1, 2, 3, 4, 4 };
    if ( b.language.conditional )
        choices.insert( choices.end(), { 5, 5, 5 } );
    if ( b.language.degrees )
        choices.insert( choices.end(), { 6, 6, 6 } );
    if ( b.language.safe )
        choices.insert( choices.end(), { 7, 7, 7 } );

    switch ( choices[ uniform( rng, 0, choices.size() - 1 ) ] )
    {
    case 0: return f::neg( gen( rng, b, depth ) );
    case 1: return f::conj( gen( rng, b, depth ), gen( rng, b, depth ) );
    case 2: return f::disj( gen( rng, b, depth ), gen( rng, b, depth ) );
    case 3: return f::implies( gen( rng, b, depth ), gen( rng, b, depth ) );
    case 4:
    {
        auto a = agent();
        return uniform( rng, 0, 1 ) ? f::know( a, gen( rng, b, depth - 1 ) ) : f::khat( a, gen( rng, b, depth - 1 ) );
    }
    case 5:
    {
        auto a = agent();
        auto cond = uniform( rng, 0, 3 ) == 0 ? f::top() : gen( rng, b, depth - 1 );
        auto body = gen( rng, b, depth - 1 );
        return uniform( rng, 0, 2 ) ? f::cond( a, cond, body ) : f::bhat( a, cond, body );
    }
    case 6:
    {
        auto a = agent();
        const std::size_t n = uniform( rng, 0, b.max_degree );
        auto body = gen( rng, b, depth - 1 );
        return uniform( rng, 0, 2 ) ? f::deg( a, n, body ) : f::bhat_deg( a, n, body );
    }
    default:
    {
        auto a = agent();
        auto body = gen( rng, b, depth - 1 );
        return uniform( rng, 0, 2 ) ? f::safe( a, body ) : f::diamond( a, body );
    }
    }
}

} // namespace

FormulaPtr random_formula( std::mt19937_64& rng, const FormulaBounds& bounds )
{
    if ( bounds.props.empty() || bounds.agents.empty() )
        throw SemanticError( "random formulas need at least one proposition and one agent" );
    return gen( rng, bounds, std::min<std::size_t>( bounds.depth, 4 ) );
}

FormulaPtr random_formula( std::uint64_t seed, const FormulaBounds& bounds )
{
    std::mt19937_64 rng{ seed };
    return random_formula( rng, bounds );
}

FormulaBounds bounds_for( const PlausibilityModel& model, LanguageTag language, std::size_t depth )
{
    FormulaBounds b;
    const auto props = model.propositions();
    b.props.assign( props.begin(), props.end() );
    if ( b.props.empty() )
        b.props.push_back( "p" );
    b.agents = model.agents();
    b.language = language;
    b.depth = depth;
    b.max_degree = model.size();
    return b;
}

FuzzReport fuzz( const FuzzOptions& options )
{
    FuzzReport report;
    const LanguageTag languages[] = { LanguageTag::from_letters( "C" ), LanguageTag::from_letters( "D" ),
                                      LanguageTag::from_letters( "S" ) };

    for ( std::size_t i = 0; i < options.seeds; ++i )
    {
        const std::uint64_t seed = options.first_seed + i;
        auto fail = [ & ]( std::string check, std::string detail ) {
            report.failures.push_back( { seed, std::move( check ), std::move( detail ) } );
        };

        std::mt19937_64 rng{ seed };
        const auto model = random_model( rng, options.model_bounds );
        ++report.models;

        const auto engine = largest_autobisimulation( model );
        const auto reference = oracle_largest( model );
        if ( !( engine == reference ) )
            fail( "largest", "engine and oracle partitions differ" );
        if ( engine.block_count() < model.size() )
            ++report.nontrivial_models;

        const ModelChecker checker{ model };
        std::vector<WorldSet> extensions;
        std::vector<FormulaPtr> formulas;
        for ( const auto& language : languages )
        {
            const auto bounds = bounds_for( model, language, options.depth );
            for ( std::size_t k = 0; k < options.formulas_per_language; ++k )
            {
                formulas.push_back( random_formula( rng, bounds ) );
                extensions.push_back( checker.extension( formulas.back() ) );
            }
        }

        for ( std::size_t w = 0; w < model.size(); ++w )
            for ( std::size_t w2 = w + 1; w2 < model.size(); ++w2 )
            {
                if ( engine.related( w, w2 ) )
                {
                    ++report.bisimilar_pairs;
                    for ( std::size_t k = 0; k < formulas.size(); ++k )
                    {
                        ++report.formula_checks;
                        if ( extensions[ k ].contains( w ) != extensions[ k ].contains( w2 ) )
                            fail( "agreement", model.world( w ) + " and " + model.world( w2 ) + " disagree on "
                                                       + to_string( formulas[ k ] ) );
                    }
                    continue;
                }
                ++report.distinguished_pairs;
                for ( auto [ x, y ] : { std::pair{ w, w2 }, std::pair{ w2, w } } )
                {
                    try
                    {
                        const auto phi = distinguishing_formula( model, x, y );
                        const bool ok = classify( phi ).subset_of( LanguageTag::from_letters( "C" ) )
                                        && checker.satisfies( x, phi ) && !checker.satisfies( y, phi );
                        if ( !ok )
                            fail( "distinguish", "bad witness " + to_string( phi ) + " for " + model.world( x ) + ", "
                                                         + model.world( y ) );
                    }
                    catch ( const Error& e )
                    {
                        fail( "distinguish", e.what() );
                    }
                }
            }
    }
    return report;
}

} // namespace plaus::oracle
