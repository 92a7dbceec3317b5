#include "plaus/error.hpp"
#include "plaus/fixtures.hpp"
#include "plaus/io.hpp"
#include "plaus/model.hpp"
#include "plaus/oracle.hpp"

#include <gtest/gtest.h>

using namespace plaus;
namespace fx = plaus::fixtures;

namespace
{

WorldSet set_of( const PlausibilityModel& m, std::initializer_list<const char*> ids )
{
    WorldSet s{ m.size() };
    for ( auto id : ids )
        s.insert( m.world_index( id ) );
    return s;
}

const char* ml_json = R"({
  "worlds": [{"id": "w1", "val": ["p"]}, {"id": "w2", "val": ["p"]}, {"id": "w3", "val": ["p"]},
             {"id": "w4", "val": ["q"]}, {"id": "w5", "val": ["q"]}],
  "agents": ["a", "b"],
  "plaus": {"a": [["w3", "w2"], ["w2", "w1"], ["w3", "w1"]], "b": [["w1", "w4"], ["w3", "w5"]]}
})";

} // namespace

TEST( LoadModel, MlDocumentGivesItsClasses )
{
    const auto m = load_model( ml_json );
    const auto a = m.agent_index( "a" );
    EXPECT_EQ( m.epistemic_class( a, m.world_index( "w1" ) ), set_of( m, { "w1", "w2", "w3" } ) );
    EXPECT_EQ( m.epistemic_class( a, m.world_index( "w4" ) ), set_of( m, { "w4" } ) );
    EXPECT_EQ( m.epistemic_class( a, m.world_index( "w5" ) ), set_of( m, { "w5" } ) );
    EXPECT_EQ( m, fx::ml() );
}

TEST( LoadModel, SingleWorldIsReflexiveOnly )
{
    const auto m = load_model( R"({"worlds": [{"id": "w"}], "agents": ["a"], "plaus": {}})" );
    EXPECT_EQ( m.size(), 1u );
    EXPECT_TRUE( m.geq( 0, 0, 0 ) );
    EXPECT_TRUE( validate( m ).empty() );
}

TEST( LoadModel, ClosesTransitively )
{
    const auto m = load_model(
            R"({"worlds": [{"id": "x"}, {"id": "y"}, {"id": "z"}], "agents": ["a"], "plaus": {"a": [["x", "y"], ["y", "z"]]}})" );
    EXPECT_TRUE( m.geq( 0, m.world_index( "x" ), m.world_index( "z" ) ) );
    EXPECT_FALSE( m.geq( 0, m.world_index( "z" ), m.world_index( "x" ) ) );
}

TEST( LoadModel, RejectsMalformedDocuments )
{
    EXPECT_THROW( (void)load_model( "{" ), ParseError );
    EXPECT_THROW( (void)load_model( R"({"worlds": [], "agents": ["a"]})" ), ParseError );
    EXPECT_THROW( (void)load_model( R"({"worlds": [], "agents": ["a"], "plaus": {}, "extra": 1})" ), ParseError );
    EXPECT_THROW( (void)load_model( R"({"worlds": [{"id": "w", "colour": 1}], "agents": ["a"], "plaus": {}})" ),
                  ParseError );
    EXPECT_THROW( (void)load_model( R"({"worlds": [{"id": "w"}], "agents": ["a"], "plaus": {"a": [["w", "v"]]}})" ),
                  ParseError );
    EXPECT_THROW( (void)load_model( R"({"worlds": [{"id": "w"}], "agents": ["a"], "plaus": {"b": []}})" ), ParseError );
    EXPECT_THROW( (void)load_model( R"({"worlds": [{"id": "w"}, {"id": "w"}], "agents": ["a"], "plaus": {}})" ),
                  ParseError );
    EXPECT_THROW( (void)load_model( R"({"worlds": [{"id": "bad id"}], "agents": ["a"], "plaus": {}})" ), ParseError );
}

TEST( LoadModel, RejectsInvalidModels )
{
    EXPECT_THROW( (void)load_model( R"({"worlds": [{"id": "w"}], "agents": [], "plaus": {}})" ), ValidationError );
    EXPECT_THROW( (void)load_model( R"({"worlds": [{"id": "x"}, {"id": "y"}, {"id": "z"}], "agents": ["a"],
                                        "plaus": {"a": [["x", "y"], ["z", "y"]]}})" ),
                  ValidationError );
}

TEST( Json, RoundTripsAndIsSorted )
{
    const auto m = fx::mr();
    const auto doc = model_to_json( m );
    EXPECT_EQ( load_model_json( doc ), m );
    EXPECT_EQ( doc.dump(), model_to_json( load_model( doc.dump() ) ).dump() );
    EXPECT_EQ( doc[ "worlds" ][ 0 ][ "id" ], "u1" );
    for ( const auto& pair : doc[ "plaus" ][ "a" ] )
        EXPECT_NE( pair[ 0 ], pair[ 1 ] );
}

TEST( Dot, HasNodesAndEdges )
{
    const auto dot = model_to_dot( fx::mc() );
    EXPECT_NE( dot.find( "digraph" ), std::string::npos );
    EXPECT_NE( dot.find( "\"v2\" -> \"v1\"" ), std::string::npos );
    EXPECT_NE( dot.find( "label" ), std::string::npos );
}

TEST( Validate, McIsClean ) { EXPECT_TRUE( validate( fx::mc() ).empty() ); }

TEST( Validate, ReportsOneIncomparablePair )
{
    const auto m = ModelBuilder{}
                           .agent( "a" )
                           .world( "x" )
                           .world( "y" )
                           .world( "z" )
                           .edge( "a", "x", "y" )
                           .edge( "a", "z", "y" )
                           .build_unchecked();
    const auto v = validate( m );
    ASSERT_EQ( v.size(), 1u );
    EXPECT_EQ( v[ 0 ].invariant, "incomparable within class" );
    EXPECT_EQ( v[ 0 ].x, "x" );
    EXPECT_EQ( v[ 0 ].y, "z" );
}

TEST( Validate, ReportsMissingAgents )
{
    const auto m = ModelBuilder{}.world( "w" ).build_unchecked();
    const auto v = validate( m );
    ASSERT_EQ( v.size(), 1u );
    EXPECT_EQ( v[ 0 ].invariant, "no agents" );
}

TEST( EpistemicClass, MlExamples )
{
    const auto m = fx::ml();
    EXPECT_EQ( m.epistemic_class( 0, m.world_index( "w2" ) ), set_of( m, { "w1", "w2", "w3" } ) );
    EXPECT_EQ( m.epistemic_class( 0, m.world_index( "w4" ) ), set_of( m, { "w4" } ) );
    EXPECT_THROW( (void)m.world_index( "nowhere" ), SemanticError );
}

TEST( MinSet, MlExamples )
{
    const auto m = fx::ml();
    EXPECT_EQ( min_set( m, 0, set_of( m, { "w1", "w2", "w3" } ) ), set_of( m, { "w1" } ) );
    EXPECT_EQ( min_set( m, 0, set_of( m, { "w1", "w3" } ) ), set_of( m, { "w1" } ) );
    EXPECT_TRUE( min_set( m, 0, WorldSet{ m.size() } ).empty() );
    EXPECT_THROW( (void)min_set( m, 0, set_of( m, { "w1", "w4" } ) ), SemanticError );
}

TEST( SetLeq, MlExamples )
{
    const auto m = fx::ml();
    EXPECT_TRUE( set_leq( m, 0, set_of( m, { "w2" } ), set_of( m, { "w1" } ) ) );
    EXPECT_FALSE( set_leq( m, 0, set_of( m, { "w1" } ), set_of( m, { "w2" } ) ) );
    EXPECT_TRUE( set_leq( m, 0, WorldSet{ m.size() }, set_of( m, { "w2" } ) ) );
}

TEST( DisjointUnion, McAndMrKeepTheirClasses )
{
    const auto mc = fx::mc();
    const auto mr = fx::mr();
    const auto u = disjoint_union( mc, mr );
    EXPECT_EQ( u.model.size(), 8u );
    EXPECT_TRUE( validate( u.model ).empty() );
    for ( std::size_t a = 0; a < 2; ++a )
    {
        EXPECT_EQ( u.model.classes( a ).size(), mc.classes( a ).size() + mr.classes( a ).size() );
        for ( std::size_t x = 0; x < mc.size(); ++x )
            for ( std::size_t y = 0; y < mr.size(); ++y )
                EXPECT_FALSE( u.model.same_class( a, u.left[ x ], u.right[ y ] ) );
    }
    EXPECT_EQ( u.model.world( u.left[ 0 ] ), "L:v1" );
    EXPECT_EQ( u.model.world( u.right[ 0 ] ), "R:u1" );
}

TEST( DisjointUnion, SingleWorlds )
{
    const auto one = ModelBuilder{}.agent( "a" ).world( "w" ).build();
    const auto u = disjoint_union( one, one );
    EXPECT_EQ( u.model.size(), 2u );
    EXPECT_FALSE( u.model.geq( 0, 0, 1 ) );
    EXPECT_FALSE( u.model.geq( 0, 1, 0 ) );
}

TEST( DisjointUnion, MissingAgentGetsIdentity )
{
    const auto ma = ModelBuilder{}.agent( "a" ).world( "x" ).world( "y" ).edge( "a", "x", "y" ).build();
    const auto mb = ModelBuilder{}.agent( "b" ).world( "x" ).world( "y" ).edge( "b", "x", "y" ).build();
    const auto u = disjoint_union( ma, mb );
    EXPECT_EQ( u.model.agents(), ( std::vector<std::string>{ "a", "b" } ) );
    const auto b = u.model.agent_index( "b" );
    EXPECT_FALSE( u.model.same_class( b, u.left[ 0 ], u.left[ 1 ] ) );
    EXPECT_TRUE( u.model.same_class( b, u.right[ 0 ], u.right[ 1 ] ) );
}

TEST( Isomorphism, DetectsRenamingsOnly )
{
    EXPECT_TRUE( find_isomorphism( fx::ml(), fx::ml() ).has_value() );
    EXPECT_FALSE( find_isomorphism( fx::ml(), fx::mr() ).has_value() );
    EXPECT_FALSE( find_isomorphism( fx::mc(), fx::mr() ).has_value() );
}

// Invariants over random models.

TEST( ModelProperties, MinOfNonEmptySubsetIsNonEmpty )
{
    for ( std::uint64_t seed = 1; seed <= 200; ++seed )
    {
        const auto m = oracle::random_model( seed, { 5, 2, 2 } );
        for ( std::size_t a = 0; a < m.agent_count(); ++a )
            for ( const auto& cls : m.classes( a ) )
            {
                const auto members = cls.members();
                for ( std::size_t mask = 1; mask < ( std::size_t{ 1 } << members.size() ); ++mask )
                {
                    WorldSet y{ m.size() };
                    for ( std::size_t i = 0; i < members.size(); ++i )
                        if ( mask >> i & 1 )
                            y.insert( members[ i ] );
                    EXPECT_FALSE( min_set( m, a, y ).empty() ) << "seed " << seed;
                    EXPECT_TRUE( min_set( m, a, y ).subset_of( y ) );
                }
            }
    }
}

TEST( ModelProperties, SetLeqIsTransitive )
{
    std::mt19937_64 rng{ 5 };
    for ( std::uint64_t seed = 1; seed <= 200; ++seed )
    {
        const auto m = oracle::random_model( seed, { 5, 1, 2 } );
        for ( const auto& cls : m.classes( 0 ) )
        {
            const auto members = cls.members();
            auto pick = [ & ] {
                WorldSet s{ m.size() };
                for ( auto w : members )
                    if ( rng() & 1 )
                        s.insert( w );
                return s;
            };
            for ( int k = 0; k < 20; ++k )
            {
                const auto y = pick(), z = pick(), u = pick();
                if ( !z.empty() && set_leq( m, 0, y, z ) && set_leq( m, 0, z, u ) )
                    EXPECT_TRUE( set_leq( m, 0, y, u ) ) << "seed " << seed;
            }
        }
    }
}

TEST( ModelProperties, ClassesPartitionTheWorlds )
{
    for ( std::uint64_t seed = 1; seed <= 200; ++seed )
    {
        const auto m = oracle::random_model( seed );
        for ( std::size_t a = 0; a < m.agent_count(); ++a )
            for ( std::size_t w = 0; w < m.size(); ++w )
                for ( std::size_t v = 0; v < m.size(); ++v )
                    EXPECT_EQ( m.epistemic_class( a, w ).contains( v ),
                               m.epistemic_class( a, w ) == m.epistemic_class( a, v ) );
    }
}

TEST( ModelProperties, UnionThenRestrictGivesTheParts )
{
    for ( std::uint64_t seed = 1; seed <= 100; ++seed )
    {
        const auto m1 = oracle::random_model( seed );
        const auto m2 = oracle::random_model( seed + 1000 );
        if ( m1.agents() != m2.agents() )
            continue;
        const auto u = disjoint_union( m1, m2 );
        WorldSet left{ u.model.size() }, right{ u.model.size() };
        for ( auto w : u.left )
            left.insert( w );
        for ( auto w : u.right )
            right.insert( w );
        EXPECT_EQ( restrict_to( u.model, left, "L:" ), m1 );
        EXPECT_EQ( restrict_to( u.model, right, "R:" ), m2 );
    }
}
