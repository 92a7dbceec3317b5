#include "plaus/fixtures.hpp"

#include "plaus/error.hpp"

#include <algorithm>
#include <cctype>

namespace plaus::fixtures
{

namespace
{

struct Entry
{
    Kind kind;
    const char* name;
    const char* param; // nullptr when the fixture takes no parameter
};

const Entry entries[] = {
    { Kind::ML, "ML", nullptr },
    { Kind::MC, "MC", nullptr },
    { Kind::MR, "MR", nullptr },
    { Kind::P, "P", nullptr },
    { Kind::Pprime, "Pprime", nullptr },
    { Kind::EXP_CD_M, "EXP_CD_M", nullptr },
    { Kind::EXP_CD_Mprime, "EXP_CD_Mprime", nullptr },
    { Kind::EXP_S_M, "EXP_S_M", nullptr },
    { Kind::EXP_S_Mprime, "EXP_S_Mprime", nullptr },
    { Kind::MK, "MK", "k" },
    { Kind::NK, "NK", "k" },
    { Kind::DEMEY_CHAIN, "DEMEY_CHAIN", "i" },
};

const Entry& entry( Kind kind )
{
    for ( const auto& e : entries )
        if ( e.kind == kind )
            return e;
    throw EngineError( "unknown fixture kind" );
}

std::size_t parse_nat( const std::string& text )
{
    if ( text.empty() || !std::all_of( text.begin(), text.end(), []( char c ) { return std::isdigit( static_cast<unsigned char>( c ) ) != 0; } ) )
        throw ParseError( "fixture parameter must be a natural number, got '" + text + "'" );
    return std::stoul( text );
}

} // namespace

bool parameterized( Kind kind ) { return entry( kind ).param != nullptr; }

const std::vector<Kind>& all_kinds()
{
    static const std::vector<Kind> kinds = [] {
        std::vector<Kind> out;
        for ( const auto& e : entries )
            out.push_back( e.kind );
        return out;
    }();
    return kinds;
}

std::string name( const FixtureId& id )
{
    const auto& e = entry( id.kind );
    if ( !e.param )
        return e.name;
    return std::string( e.name ) + "?" + e.param + "=" + std::to_string( id.param );
}

FixtureId parse_id( const std::string& text )
{
    std::string base = text;
    std::string arg;
    if ( auto q = text.find( '?' ); q != std::string::npos )
    {
        base = text.substr( 0, q );
        auto eq = text.find( '=', q );
        if ( eq == std::string::npos )
            throw ParseError( "fixture parameter must look like ?k=N" );
        arg = text.substr( eq + 1 );
    }
    else if ( auto open = text.find( '(' ); open != std::string::npos )
    {
        if ( text.back() != ')' )
            throw ParseError( "unbalanced parenthesis in fixture id" );
        base = text.substr( 0, open );
        arg = text.substr( open + 1, text.size() - open - 2 );
    }

    for ( const auto& e : entries )
    {
        if ( base != e.name )
            continue;
        if ( !e.param )
        {
            if ( !arg.empty() )
                throw ParseError( "fixture " + base + " takes no parameter" );
            return { e.kind, 0 };
        }
        if ( arg.empty() )
            throw ParseError( "fixture " + base + " needs a parameter " + e.param );
        return { e.kind, parse_nat( arg ) };
    }
    throw ParseError( "unknown fixture '" + text + "'" );
}

PlausibilityModel ml()
{
    return ModelBuilder{}
            .agent( "a" )
            .agent( "b" )
            .world( "w1", { "p" } )
            .world( "w2", { "p" } )
            .world( "w3", { "p" } )
            .world( "w4", { "q" } )
            .world( "w5", { "q" } )
            .edge( "a", "w3", "w2" )
            .edge( "a", "w2", "w1" )
            .edge( "a", "w3", "w1" )
            .edge( "b", "w1", "w4" )
            .edge( "b", "w3", "w5" )
            .build();
}

PlausibilityModel mc()
{
    return ModelBuilder{}
            .agent( "a" )
            .agent( "b" )
            .world( "v1", { "p" } )
            .world( "v2", { "p" } )
            .world( "v3", { "q" } )
            .edge( "a", "v2", "v1" )
            .edge( "b", "v1", "v3" )
            .build();
}

PlausibilityModel mr()
{
    return ModelBuilder{}
            .agent( "a" )
            .agent( "b" )
            .world( "u1", { "p" } )
            .world( "u2", { "p" } )
            .world( "u3", { "p" } )
            .world( "u4", { "q" } )
            .world( "u5", { "q" } )
            .edge( "a", "u2", "u3" )
            .edge( "a", "u2", "u1" )
            .edge( "a", "u1", "u3" )
            .edge( "a", "u3", "u1" )
            .edge( "b", "u1", "u4" )
            .edge( "b", "u3", "u5" )
            .build();
}

PlausibilityModel p()
{
    return ModelBuilder{}
            .agent( "a" )
            .world( "w", { "p" } )
            .world( "z" )
            .world( "y", { "p" } )
            .world( "x", { "q" } )
            .chain( "a", { "x", "y", "z", "w" } )
            .build();
}

PlausibilityModel p_prime()
{
    return ModelBuilder{}
            .agent( "a" )
            .world( "w'", { "p" } )
            .world( "z'" )
            .world( "x'", { "q" } )
            .chain( "a", { "x'", "z'", "w'" } )
            .build();
}

namespace
{

PlausibilityModel exp_cd_m()
{
    return ModelBuilder{}
            .agent( "a" )
            .world( "w1" )
            .world( "w2", { "p", "q" } )
            .world( "w3", { "q" } )
            .chain( "a", { "w3", "w2", "w1" } )
            .build();
}

PlausibilityModel exp_cd_m_prime()
{
    return ModelBuilder{}
            .agent( "a" )
            .world( "w1'" )
            .world( "w2'", { "p" } )
            .world( "w3'" )
            .chain( "a", { "w3'", "w2'", "w1'" } )
            .build();
}

PlausibilityModel exp_s_m()
{
    return ModelBuilder{}
            .agent( "a" )
            .world( "x1", { "p", "q" } )
            .world( "x2", { "p" } )
            .world( "y" )
            .chain( "a", { "y", "x2", "x1" } )
            .build();
}

PlausibilityModel exp_s_m_prime()
{
    return ModelBuilder{}.agent( "a" ).world( "x'", { "p" } ).world( "y'" ).chain( "a", { "y'", "x'" } ).build();
}

} // namespace

PlausibilityModel mk( std::size_t k )
{
    ModelBuilder b;
    b.agent( "a" );
    std::vector<std::string> order{ "y", "x" };
    b.world( "x", { "q", "r" } ).world( "y", { "q" } );
    for ( std::size_t i = k + 1; i-- > 0; )
    {
        const auto id = "w" + std::to_string( i );
        b.world( id, { "p" + std::to_string( i ) } );
        order.push_back( id );
    }
    return b.chain( "a", order ).build();
}

PlausibilityModel nk( std::size_t k )
{
    ModelBuilder b;
    b.agent( "a" );
    std::vector<std::string> order{ "x'", "y'" };
    b.world( "x'", { "q", "r" } ).world( "y'", { "q" } );
    for ( std::size_t i = k + 1; i-- > 0; )
    {
        const auto id = "w" + std::to_string( i ) + "'";
        b.world( id, { "p" + std::to_string( i ) } );
        order.push_back( id );
    }
    return b.chain( "a", order ).build();
}

PlausibilityModel demey_chain( std::size_t i )
{
    if ( i < 1 )
        throw SemanticError( "DEMEY_CHAIN needs i >= 1" );
    ModelBuilder b;
    b.agent( "a" );
    std::vector<std::string> order;
    for ( std::size_t j = i; j >= 1; --j )
    {
        const auto id = "w" + std::to_string( j );
        b.world( id, j % 2 == 0 ? Valuation{ "p" } : Valuation{} );
        order.push_back( id );
    }
    return b.chain( "a", order ).build();
}

PlausibilityModel build( const FixtureId& id )
{
    switch ( id.kind )
    {
    case Kind::ML: return ml();
    case Kind::MC: return mc();
    case Kind::MR: return mr();
    case Kind::P: return p();
    case Kind::Pprime: return p_prime();
    case Kind::EXP_CD_M: return exp_cd_m();
    case Kind::EXP_CD_Mprime: return exp_cd_m_prime();
    case Kind::EXP_S_M: return exp_s_m();
    case Kind::EXP_S_Mprime: return exp_s_m_prime();
    case Kind::MK: return mk( id.param );
    case Kind::NK: return nk( id.param );
    case Kind::DEMEY_CHAIN: return demey_chain( id.param );
    }
    throw EngineError( "unknown fixture kind" );
}

} // namespace plaus::fixtures
