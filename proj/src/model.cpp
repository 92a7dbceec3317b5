#include "plaus/model.hpp"

#include "plaus/error.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

namespace plaus
{

namespace
{

bool is_ident_char( char c )
{
    return std::isalnum( static_cast<unsigned char>( c ) ) != 0 || c == '_';
}

std::size_t find_root( std::vector<std::size_t>& parent, std::size_t x )
{
    while ( parent[ x ] != x )
    {
        parent[ x ] = parent[ parent[ x ] ];
        x = parent[ x ];
    }
    return x;
}

} // namespace

bool is_world_token( std::string_view token )
{
    if ( token.empty() )
        return false;
    return std::all_of( token.begin(), token.end(),
                        []( char c ) { return is_ident_char( c ) || c == '\'' || c == ':'; } );
}

bool is_agent_token( std::string_view token )
{
    return !token.empty() && std::all_of( token.begin(), token.end(), is_ident_char );
}

std::string describe( const Violation& v )
{
    std::string out = v.invariant;
    if ( !v.agent.empty() )
        out += " for agent " + v.agent;
    if ( !v.x.empty() )
        out += " at (" + v.x + ", " + v.y + ")";
    return out;
}

PlausibilityModel::PlausibilityModel( std::vector<std::string> worlds, std::vector<Valuation> val,
                                      std::vector<std::string> agents, std::vector<Relation> plaus )
        : _worlds{ std::move( worlds ) }, _agents{ std::move( agents ) }, _val{ std::move( val ) },
          _plaus{ std::move( plaus ) }
{
    const std::size_t n = _worlds.size();
    for ( auto& r : _plaus )
    {
        r.close_reflexive();
        r.close_transitive();
    }

    _class_of.assign( _agents.size(), std::vector<std::size_t>( n, 0 ) );
    _classes.assign( _agents.size(), {} );
    for ( std::size_t a = 0; a < _agents.size(); ++a )
    {
        std::vector<std::size_t> parent( n );
        std::iota( parent.begin(), parent.end(), std::size_t{ 0 } );
        for ( auto [ x, y ] : _plaus[ a ].pairs() )
            parent[ find_root( parent, x ) ] = find_root( parent, y );

        std::vector<std::size_t> id_of_root( n, n );
        for ( std::size_t w = 0; w < n; ++w )
        {
            const std::size_t root = find_root( parent, w );
            if ( id_of_root[ root ] == n )
            {
                id_of_root[ root ] = _classes[ a ].size();
                _classes[ a ].emplace_back( n );
            }
            _class_of[ a ][ w ] = id_of_root[ root ];
            _classes[ a ][ id_of_root[ root ] ].insert( w );
        }
    }
}

std::optional<std::size_t> PlausibilityModel::find_world( std::string_view id ) const
{
    auto it = std::lower_bound( _worlds.begin(), _worlds.end(), id );
    if ( it == _worlds.end() || *it != id )
        return std::nullopt;
    return static_cast<std::size_t>( it - _worlds.begin() );
}

std::optional<std::size_t> PlausibilityModel::find_agent( std::string_view id ) const
{
    auto it = std::lower_bound( _agents.begin(), _agents.end(), id );
    if ( it == _agents.end() || *it != id )
        return std::nullopt;
    return static_cast<std::size_t>( it - _agents.begin() );
}

std::size_t PlausibilityModel::world_index( std::string_view id ) const
{
    if ( auto w = find_world( id ) )
        return *w;
    throw SemanticError( "unknown world '" + std::string( id ) + "'" );
}

std::size_t PlausibilityModel::agent_index( std::string_view id ) const
{
    if ( auto a = find_agent( id ) )
        return *a;
    throw SemanticError( "unknown agent '" + std::string( id ) + "'" );
}

std::set<std::string> PlausibilityModel::propositions() const
{
    std::set<std::string> out;
    for ( const auto& v : _val )
        out.insert( v.begin(), v.end() );
    return out;
}

PlausibilityModel PlausibilityModel::with_relations( std::vector<Relation> plaus ) const
{
    if ( plaus.size() != _agents.size() )
        throw EngineError( "relation count does not match agent count" );
    return PlausibilityModel{ _worlds, _val, _agents, std::move( plaus ) };
}

ModelBuilder& ModelBuilder::world( const std::string& id, Valuation val )
{
    if ( !is_world_token( id ) )
        throw ParseError( "invalid world id '" + id + "'" );
    if ( !_worlds.emplace( id, std::move( val ) ).second )
        throw ParseError( "duplicate world id '" + id + "'" );
    return *this;
}

ModelBuilder& ModelBuilder::agent( const std::string& id )
{
    if ( !is_agent_token( id ) )
        throw ParseError( "invalid agent id '" + id + "'" );
    if ( !_agents.insert( id ).second )
        throw ParseError( "duplicate agent id '" + id + "'" );
    return *this;
}

ModelBuilder& ModelBuilder::edge( const std::string& agent, const std::string& x, const std::string& y )
{
    if ( !_agents.count( agent ) )
        throw ParseError( "edge for undeclared agent '" + agent + "'" );
    for ( const auto* w : { &x, &y } )
        if ( !_worlds.count( *w ) )
            throw ParseError( "edge mentions undeclared world '" + *w + "'" );
    _edges.emplace_back( agent, x, y );
    return *this;
}

ModelBuilder& ModelBuilder::chain( const std::string& agent, const std::vector<std::string>& worlds )
{
    for ( std::size_t i = 0; i + 1 < worlds.size(); ++i )
        edge( agent, worlds[ i ], worlds[ i + 1 ] );
    return *this;
}

PlausibilityModel ModelBuilder::build_unchecked() const
{
    std::vector<std::string> worlds;
    std::vector<Valuation> val;
    for ( const auto& [ id, v ] : _worlds )
    {
        worlds.push_back( id );
        val.push_back( v );
    }
    std::vector<std::string> agents( _agents.begin(), _agents.end() );
    std::vector<Relation> plaus( agents.size(), Relation{ worlds.size() } );

    auto index_of = []( const std::vector<std::string>& v, const std::string& s ) {
        return static_cast<std::size_t>( std::lower_bound( v.begin(), v.end(), s ) - v.begin() );
    };
    for ( const auto& [ a, x, y ] : _edges )
        plaus[ index_of( agents, a ) ].insert( index_of( worlds, x ), index_of( worlds, y ) );

    return PlausibilityModel{ std::move( worlds ), std::move( val ), std::move( agents ), std::move( plaus ) };
}

PlausibilityModel ModelBuilder::build() const
{
    auto model = build_unchecked();
    auto violations = validate( model );
    if ( !violations.empty() )
        throw ValidationError( describe( violations.front() ) );
    return model;
}

std::vector<Violation> validate( const PlausibilityModel& model )
{
    std::vector<Violation> out;
    if ( model.agent_count() == 0 )
        out.push_back( { "no agents", "", "", "" } );

    const std::size_t n = model.size();
    for ( std::size_t a = 0; a < model.agent_count(); ++a )
    {
        const auto& r = model.plaus( a );
        const auto& name = model.agent( a );
        for ( std::size_t x = 0; x < n; ++x )
            if ( !r.contains( x, x ) )
                out.push_back( { "not reflexive", name, model.world( x ), model.world( x ) } );

        bool transitive = true;
        for ( std::size_t x = 0; x < n && transitive; ++x )
            for ( std::size_t y = 0; y < n && transitive; ++y )
                for ( std::size_t z = 0; z < n && transitive; ++z )
                    if ( r.contains( x, y ) && r.contains( y, z ) && !r.contains( x, z ) )
                    {
                        out.push_back( { "not transitive", name, model.world( x ), model.world( z ) } );
                        transitive = false;
                    }

        for ( std::size_t x = 0; x < n; ++x )
            for ( std::size_t y = x + 1; y < n; ++y )
            {
                if ( model.same_class( a, x, y ) && !r.contains( x, y ) && !r.contains( y, x ) )
                    out.push_back( { "incomparable within class", name, model.world( x ), model.world( y ) } );
            }

        for ( auto [ x, y ] : r.pairs() )
            if ( !model.same_class( a, x, y ) )
                out.push_back( { "relation crosses classes", name, model.world( x ), model.world( y ) } );
    }
    return out;
}

WorldSet min_set( const Relation& order, const WorldSet& y )
{
    WorldSet out{ y.universe() };
    const auto members = y.members();
    for ( std::size_t candidate : members )
    {
        bool minimal = true;
        for ( std::size_t other : members )
            if ( !order.contains( other, candidate ) )
            {
                minimal = false;
                break;
            }
        if ( minimal )
            out.insert( candidate );
    }
    return out;
}

WorldSet min_set( const PlausibilityModel& model, std::size_t agent, const WorldSet& y )
{
    if ( !y.empty() && !y.subset_of( model.epistemic_class( agent, y.first() ) ) )
        throw SemanticError( "min_set argument spans several epistemic classes" );
    return min_set( model.plaus( agent ), y );
}

bool set_leq( const PlausibilityModel& model, std::size_t agent, const WorldSet& y, const WorldSet& z )
{
    const auto& r = model.plaus( agent );
    for ( std::size_t a : y.members() )
        for ( std::size_t b : z.members() )
            if ( !r.contains( a, b ) )
                return false;
    return true;
}

UnionResult disjoint_union( const PlausibilityModel& m1, const PlausibilityModel& m2 )
{
    ModelBuilder b;
    std::set<std::string> agents( m1.agents().begin(), m1.agents().end() );
    agents.insert( m2.agents().begin(), m2.agents().end() );
    for ( const auto& a : agents )
        b.agent( a );

    auto add_side = [ &b ]( const PlausibilityModel& m, const std::string& prefix ) {
        for ( std::size_t w = 0; w < m.size(); ++w )
            b.world( prefix + m.world( w ), m.valuation( w ) );
        for ( std::size_t a = 0; a < m.agent_count(); ++a )
            for ( auto [ x, y ] : m.plaus( a ).pairs() )
                if ( x != y )
                    b.edge( m.agent( a ), prefix + m.world( x ), prefix + m.world( y ) );
    };
    add_side( m1, "L:" );
    add_side( m2, "R:" );

    UnionResult out{ b.build_unchecked(), {}, {} };
    for ( std::size_t w = 0; w < m1.size(); ++w )
        out.left.push_back( out.model.world_index( "L:" + m1.world( w ) ) );
    for ( std::size_t w = 0; w < m2.size(); ++w )
        out.right.push_back( out.model.world_index( "R:" + m2.world( w ) ) );
    return out;
}

PlausibilityModel restrict_to( const PlausibilityModel& model, const WorldSet& worlds, std::string_view strip_prefix )
{
    auto rename = [ & ]( const std::string& id ) {
        if ( !strip_prefix.empty() && id.rfind( strip_prefix, 0 ) == 0 )
            return id.substr( strip_prefix.size() );
        return id;
    };

    ModelBuilder b;
    for ( const auto& a : model.agents() )
        b.agent( a );
    for ( std::size_t w : worlds.members() )
        b.world( rename( model.world( w ) ), model.valuation( w ) );
    for ( std::size_t a = 0; a < model.agent_count(); ++a )
        for ( auto [ x, y ] : model.plaus( a ).pairs() )
            if ( x != y && worlds.contains( x ) && worlds.contains( y ) )
                b.edge( model.agent( a ), rename( model.world( x ) ), rename( model.world( y ) ) );
    return b.build_unchecked();
}

namespace
{

bool extend_iso( const PlausibilityModel& m1, const PlausibilityModel& m2, const std::vector<std::size_t>& agent_map,
                 std::vector<std::size_t>& f, std::vector<bool>& used, std::size_t next )
{
    if ( next == m1.size() )
        return true;
    for ( std::size_t cand = 0; cand < m2.size(); ++cand )
    {
        if ( used[ cand ] || m1.valuation( next ) != m2.valuation( cand ) )
            continue;
        bool ok = true;
        for ( std::size_t a = 0; a < m1.agent_count() && ok; ++a )
        {
            const std::size_t b = agent_map[ a ];
            for ( std::size_t prev = 0; prev <= next && ok; ++prev )
            {
                const std::size_t img = prev == next ? cand : f[ prev ];
                ok = m1.geq( a, next, prev ) == m2.geq( b, cand, img ) && m1.geq( a, prev, next ) == m2.geq( b, img, cand );
            }
        }
        if ( !ok )
            continue;
        f[ next ] = cand;
        used[ cand ] = true;
        if ( extend_iso( m1, m2, agent_map, f, used, next + 1 ) )
            return true;
        used[ cand ] = false;
    }
    return false;
}

} // namespace

std::optional<std::vector<std::size_t>> find_isomorphism( const PlausibilityModel& m1, const PlausibilityModel& m2 )
{
    if ( m1.size() != m2.size() || m1.agents() != m2.agents() )
        return std::nullopt;
    std::vector<std::size_t> agent_map( m1.agent_count() );
    std::iota( agent_map.begin(), agent_map.end(), std::size_t{ 0 } );
    std::vector<std::size_t> f( m1.size(), 0 );
    std::vector<bool> used( m2.size(), false );
    if ( extend_iso( m1, m2, agent_map, f, used, 0 ) )
        return f;
    return std::nullopt;
}

} // namespace plaus
