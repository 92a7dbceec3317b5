#include "plaus/io.hpp"

#include "plaus/error.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace plaus
{

namespace
{

void reject_unknown_keys( const nlohmann::json& obj, std::initializer_list<const char*> allowed, const std::string& where )
{
    for ( const auto& item : obj.items() )
    {
        bool known = false;
        for ( const char* key : allowed )
            known = known || item.key() == key;
        if ( !known )
            throw ParseError( "unknown key '" + item.key() + "' in " + where );
    }
}

const std::string& as_string( const nlohmann::json& j, const std::string& where )
{
    if ( !j.is_string() )
        throw ParseError( where + " must be a string" );
    return j.get_ref<const std::string&>();
}

} // namespace

PlausibilityModel load_model_json( const nlohmann::json& doc, bool check )
{
    if ( !doc.is_object() )
        throw ParseError( "model document must be an object" );
    reject_unknown_keys( doc, { "worlds", "agents", "plaus" }, "model" );
    for ( const char* key : { "worlds", "agents", "plaus" } )
        if ( !doc.contains( key ) )
            throw ParseError( std::string( "missing key '" ) + key + "'" );

    ModelBuilder b;
    if ( !doc[ "worlds" ].is_array() )
        throw ParseError( "'worlds' must be an array" );
    for ( const auto& w : doc[ "worlds" ] )
    {
        if ( !w.is_object() )
            throw ParseError( "world entries must be objects" );
        reject_unknown_keys( w, { "id", "val" }, "world" );
        if ( !w.contains( "id" ) )
            throw ParseError( "world entry without 'id'" );
        Valuation val;
        if ( w.contains( "val" ) )
        {
            if ( !w[ "val" ].is_array() )
                throw ParseError( "'val' must be an array" );
            for ( const auto& p : w[ "val" ] )
                val.insert( as_string( p, "proposition" ) );
        }
        b.world( as_string( w[ "id" ], "world id" ), std::move( val ) );
    }

    if ( !doc[ "agents" ].is_array() )
        throw ParseError( "'agents' must be an array" );
    std::set<std::string> agents;
    for ( const auto& a : doc[ "agents" ] )
    {
        const auto id = as_string( a, "agent id" );
        b.agent( id );
        agents.insert( id );
    }

    if ( !doc[ "plaus" ].is_object() )
        throw ParseError( "'plaus' must be an object" );
    for ( const auto& [ agent, pairs ] : doc[ "plaus" ].items() )
    {
        if ( !agents.count( agent ) )
            throw ParseError( "edges for undeclared agent '" + agent + "'" );
        if ( !pairs.is_array() )
            throw ParseError( "edges for agent '" + agent + "' must be an array" );
        for ( const auto& pair : pairs )
        {
            if ( !pair.is_array() || pair.size() != 2 )
                throw ParseError( "edge must be a two-element array" );
            b.edge( agent, as_string( pair[ 0 ], "edge endpoint" ), as_string( pair[ 1 ], "edge endpoint" ) );
        }
    }
    return check ? b.build() : b.build_unchecked();
}

PlausibilityModel load_model( const std::string& document )
{
    nlohmann::json doc;
    try
    {
        doc = nlohmann::json::parse( document );
    }
    catch ( const nlohmann::json::parse_error& e )
    {
        throw ParseError( std::string( "malformed JSON: " ) + e.what(), e.byte );
    }
    return load_model_json( doc );
}

PlausibilityModel load_model_file( const std::string& path )
{
    std::ifstream in( path );
    if ( !in )
        throw ParseError( "cannot read model file '" + path + "'" );
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_model( buf.str() );
}

nlohmann::json model_to_json( const PlausibilityModel& model )
{
    nlohmann::json worlds = nlohmann::json::array();
    for ( std::size_t w = 0; w < model.size(); ++w )
        worlds.push_back( { { "id", model.world( w ) }, { "val", model.valuation( w ) } } );

    nlohmann::json plaus = nlohmann::json::object();
    for ( std::size_t a = 0; a < model.agent_count(); ++a )
    {
        nlohmann::json pairs = nlohmann::json::array();
        for ( auto [ x, y ] : model.plaus( a ).pairs() )
            if ( x != y )
                pairs.push_back( { model.world( x ), model.world( y ) } );
        plaus[ model.agent( a ) ] = std::move( pairs );
    }
    return { { "worlds", std::move( worlds ) }, { "agents", model.agents() }, { "plaus", std::move( plaus ) } };
}

std::string model_to_dot( const PlausibilityModel& model )
{
    std::ostringstream out;
    out << "digraph model {\n";
    for ( std::size_t w = 0; w < model.size(); ++w )
    {
        out << "  \"" << model.world( w ) << "\" [label=\"" << model.world( w ) << "\\n{";
        bool first = true;
        for ( const auto& p : model.valuation( w ) )
        {
            out << ( first ? "" : "," ) << p;
            first = false;
        }
        out << "}\"];\n";
    }
    for ( std::size_t a = 0; a < model.agent_count(); ++a )
        for ( auto [ x, y ] : model.plaus( a ).pairs() )
            if ( x != y )
                out << "  \"" << model.world( x ) << "\" -> \"" << model.world( y ) << "\" [label=\""
                    << model.agent( a ) << "\"];\n";
    out << "}\n";
    return out.str();
}

} // namespace plaus
