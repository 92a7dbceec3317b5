#include "plaus/bisim.hpp"
#include "plaus/error.hpp"
#include "plaus/fixtures.hpp"
#include "plaus/oracle.hpp"
#include "plaus/semantics.hpp"

#include <gtest/gtest.h>

using namespace plaus;
namespace fx = plaus::fixtures;

namespace
{

using Pairs = std::vector<std::pair<std::string, std::string>>;

Relation relation_of( const PlausibilityModel& m, const Pairs& pairs, bool with_identity = true )
{
    auto r = with_identity ? Relation::identity( m.size() ) : Relation{ m.size() };
    for ( const auto& [ x, y ] : pairs )
        r.insert( m.world_index( x ), m.world_index( y ) );
    return r;
}

std::vector<std::vector<std::string>> blocks( const PlausibilityModel& m, const EquivRelation& r )
{
    std::vector<std::vector<std::string>> out;
    for ( const auto& b : r.blocks() )
    {
        out.emplace_back();
        for ( auto w : b.members() )
            out.back().push_back( m.world( w ) );
    }
    return out;
}

using Blocks = std::vector<std::vector<std::string>>;

} // namespace

TEST( EquivalenceClosure, Examples )
{
    const auto m = fx::ml();
    EXPECT_EQ( blocks( m, equivalence_closure( m, { { "w1", "w3" } } ) ),
               ( Blocks{ { "w1", "w3" }, { "w2" }, { "w4" }, { "w5" } } ) );
    EXPECT_EQ( equivalence_closure( m, Pairs{} ), EquivRelation::identity( m.size() ) );
    EXPECT_EQ( blocks( m, equivalence_closure( m, { { "w1", "w3" }, { "w3", "w5" } } ) ),
               ( Blocks{ { "w1", "w3", "w5" }, { "w2" }, { "w4" } } ) );
    EXPECT_THROW( (void)equivalence_closure( m, { { "w1", "zz" } } ), SemanticError );
}

TEST( EquivRelation, CanonicalRepresentatives )
{
    const auto r = EquivRelation::from_labels( std::vector<int>{ 7, 3, 7, 3, 9 } );
    EXPECT_EQ( r.rep( 2 ), 0u );
    EXPECT_EQ( r.rep( 3 ), 1u );
    EXPECT_EQ( r.block_count(), 3u );
    EXPECT_TRUE( r.refines( EquivRelation::full( 5 ) ) );
    EXPECT_TRUE( EquivRelation::identity( 5 ).refines( r ) );
    EXPECT_FALSE( r.refines( EquivRelation::identity( 5 ) ) );
    EXPECT_EQ( equivalence_closure( r.as_relation() ), r );
}

TEST( DerivedRelation, MlExample )
{
    const auto m = fx::ml();
    const auto r = equivalence_closure( m, { { "w1", "w3" }, { "w4", "w5" } } );
    const auto a = m.agent_index( "a" );
    EXPECT_EQ( derived_relation( m, r, a ), relation_of( m, { { "w1", "w3" }, { "w3", "w1" }, { "w2", "w3" }, { "w2", "w1" } } ) );
    const auto b = m.agent_index( "b" );
    EXPECT_EQ( derived_relation( m, r, b ), m.plaus( b ) );
}

TEST( DerivedRelation, IdentityOnAChainReproducesTheOrder )
{
    const auto m = ModelBuilder{}.agent( "a" ).world( "x" ).world( "y" ).edge( "a", "x", "y" ).build();
    EXPECT_EQ( derived_relation( m, EquivRelation::identity( 2 ), 0 ), m.plaus( 0 ) );
}

TEST( CheckAutobisimulation, MlExamples )
{
    const auto m = fx::ml();
    EXPECT_TRUE( check_autobisimulation( m, relation_of( m, { { "w1", "w3" }, { "w3", "w1" }, { "w4", "w5" }, { "w5", "w4" } } ) ).ok );

    const auto bad = check_autobisimulation( m, relation_of( m, { { "w1", "w2" }, { "w2", "w1" } } ) );
    EXPECT_FALSE( bad.ok );
    ASSERT_FALSE( bad.violations.empty() );
    const auto b = m.agent_index( "b" );
    bool b_clause = false;
    for ( const auto& v : bad.violations )
        b_clause = b_clause || ( v.clause != Clause::Atoms && v.agent == b );
    EXPECT_TRUE( b_clause );

    const auto atoms = check_autobisimulation( m, relation_of( m, { { "w1", "w4" } } ) );
    ASSERT_FALSE( atoms.ok );
    EXPECT_EQ( atoms.violations.front().clause, Clause::Atoms );
    EXPECT_STREQ( clause_name( Clause::ForthGeq ), "forth>=" );
}

TEST( CheckAutobisimulation, IdentityAlwaysPasses )
{
    for ( std::uint64_t seed = 1; seed <= 100; ++seed )
    {
        const auto m = oracle::random_model( seed );
        EXPECT_TRUE( check_autobisimulation( m, Relation::identity( m.size() ) ).ok );
    }
}

TEST( Largest, Fixtures )
{
    const auto ml = fx::ml();
    EXPECT_EQ( blocks( ml, largest_autobisimulation( ml ) ), ( Blocks{ { "w1", "w3" }, { "w2" }, { "w4", "w5" } } ) );
    EXPECT_EQ( brute_force_largest( ml ), largest_autobisimulation( ml ) );
    EXPECT_EQ( largest_autobisimulation( fx::mc() ), EquivRelation::identity( 3 ) );
    const auto one = ModelBuilder{}.agent( "a" ).world( "w" ).build();
    EXPECT_EQ( brute_force_largest( one ), EquivRelation::identity( 1 ) );

    const auto p = fx::p();
    EXPECT_EQ( blocks( p, brute_force_largest( p ) ), ( Blocks{ { "w", "y" }, { "x" }, { "z" } } ) );
    EXPECT_EQ( contract( p ).model.size(), 3u );
}

TEST( Largest, BruteForceBound )
{
    EXPECT_THROW( (void)brute_force_largest( fx::mk( 8 ) ), BoundExceeded );
    EXPECT_NO_THROW( (void)largest_autobisimulation( fx::mk( 8 ) ) );
}

TEST( Largest, RefinementRoundsShrink )
{
    const auto m = fx::ml();
    const auto rounds = refinement_rounds( m );
    ASSERT_FALSE( rounds.empty() );
    for ( std::size_t i = 1; i < rounds.size(); ++i )
        EXPECT_TRUE( rounds[ i ].refines( rounds[ i - 1 ] ) );
    EXPECT_EQ( rounds.back(), largest_autobisimulation( m ) );
}

TEST( NormalRelation, Examples )
{
    const auto ml = fx::ml();
    const auto a = ml.agent_index( "a" );
    EXPECT_EQ( normal_relation( ml, a ),
               relation_of( ml, { { "w1", "w3" }, { "w3", "w1" }, { "w2", "w3" }, { "w2", "w1" } } ) );
    const auto mc = fx::mc();
    for ( std::size_t ag = 0; ag < mc.agent_count(); ++ag )
        EXPECT_EQ( normal_relation( mc, ag ), mc.plaus( ag ) );

    const auto mp = fx::build( fx::parse_id( "EXP_CD_Mprime" ) );
    WorldSet image{ mp.size() };
    image.insert( mp.world_index( "w1'" ) );
    image.insert( mp.world_index( "w3'" ) );
    EXPECT_EQ( normal_relation( mp, 0 ).image( mp.world_index( "w3'" ) ), image );
}

TEST( Normalize, MlBecomesMr )
{
    const auto n = normalize( fx::ml() );
    EXPECT_EQ( n.worlds(), fx::ml().worlds() );
    const auto iso = find_isomorphism( n, fx::mr() );
    ASSERT_TRUE( iso.has_value() );
    for ( std::size_t w = 0; w < n.size(); ++w )
        EXPECT_EQ( "u" + n.world( w ).substr( 1 ), fx::mr().world( ( *iso )[ w ] ) );
}

TEST( Contract, MrExample )
{
    const auto mr = fx::mr();
    const auto c = contract( mr );
    const auto& m = c.model;
    ASSERT_EQ( m.worlds(), ( std::vector<std::string>{ "c:u1", "c:u2", "c:u4" } ) );
    EXPECT_EQ( m.valuation( 0 ), Valuation{ "p" } );
    EXPECT_EQ( m.valuation( 1 ), Valuation{ "p" } );
    EXPECT_EQ( m.valuation( 2 ), Valuation{ "q" } );
    EXPECT_EQ( m.plaus( m.agent_index( "a" ) ), relation_of( m, { { "c:u2", "c:u1" } } ) );
    EXPECT_EQ( m.plaus( m.agent_index( "b" ) ), relation_of( m, { { "c:u1", "c:u4" } } ) );
    EXPECT_EQ( c.quotient, ( std::vector<std::size_t>{ 0, 1, 0, 2, 2 } ) );
    EXPECT_TRUE( find_isomorphism( m, fx::mc() ).has_value() );
    EXPECT_TRUE( find_isomorphism( contract( fx::ml() ).model, fx::mc() ).has_value() );
}

TEST( Bisimilar, Examples )
{
    const auto mr = fx::mr();
    const auto mc = fx::mc();
    const auto r = bisimilar( mr, mr.world_index( "u1" ), mc, mc.world_index( "v1" ) );
    EXPECT_TRUE( r.bisimilar );
    std::vector<std::pair<std::string, std::string>> named;
    for ( auto [ x, y ] : r.relation )
        named.emplace_back( mr.world( x ), mc.world( y ) );
    EXPECT_EQ( named, ( Pairs{ { "u1", "v1" }, { "u2", "v2" }, { "u3", "v1" }, { "u4", "v3" }, { "u5", "v3" } } ) );

    const auto ml = fx::ml();
    EXPECT_TRUE( bisimilar( ml, ml.world_index( "w1" ), ml, ml.world_index( "w3" ) ).bisimilar );
    EXPECT_TRUE( bisimilar( ml, 1, ml, 1 ).bisimilar );
    EXPECT_FALSE( bisimilar( ml, ml.world_index( "w1" ), ml, ml.world_index( "w2" ) ).bisimilar );
    EXPECT_TRUE( bisimilar( mr, mr.world_index( "u2" ), mc, mc.world_index( "v2" ) ).bisimilar );
    EXPECT_FALSE( bisimilar( mr, mr.world_index( "u2" ), mc, mc.world_index( "v1" ) ).bisimilar );
}

TEST( Distinguish, Examples )
{
    const auto ml = fx::ml();
    const auto w1 = ml.world_index( "w1" );
    const auto w2 = ml.world_index( "w2" );
    const auto phi = distinguishing_formula( ml, w1, w2 );
    EXPECT_TRUE( satisfies( ml, w1, phi ) );
    EXPECT_FALSE( satisfies( ml, w2, phi ) );
    EXPECT_TRUE( classify( phi ).subset_of( LanguageTag::from_letters( "C" ) ) );
    EXPECT_THROW( (void)distinguishing_formula( ml, w1, ml.world_index( "w3" ) ), SemanticError );

    const auto two = ModelBuilder{}.agent( "a" ).world( "x", { "p" } ).world( "y" ).build();
    EXPECT_EQ( to_string( distinguishing_formula( two, 0, 1 ) ), "p" );
    EXPECT_EQ( to_string( distinguishing_formula( two, 1, 0 ) ), "~p" );
}

// Properties over random models.

TEST( BisimProperties, RefinementMatchesBruteForce )
{
    for ( std::uint64_t seed = 1; seed <= 1000; ++seed )
    {
        const auto m = oracle::random_model( seed );
        const auto rounds = refinement_rounds( m );
        // The fixpoint must pass on its own; no fallback involved.
        EXPECT_TRUE( check_autobisimulation( m, rounds.back().as_relation() ).ok ) << "seed " << seed;
        EXPECT_EQ( rounds.back(), brute_force_largest( m ) ) << "seed " << seed;
    }
}

TEST( BisimProperties, ContractionIsNormalAndMinimal )
{
    for ( std::uint64_t seed = 1; seed <= 300; ++seed )
    {
        const auto m = oracle::random_model( seed );
        const auto c = contract( m );
        EXPECT_EQ( largest_autobisimulation( c.model ), EquivRelation::identity( c.model.size() ) ) << "seed " << seed;
        for ( std::size_t a = 0; a < c.model.agent_count(); ++a )
            EXPECT_EQ( normal_relation( c.model, a ), c.model.plaus( a ) ) << "seed " << seed;
        for ( std::size_t w = 0; w < m.size(); ++w )
            EXPECT_TRUE( bisimilar( m, w, c.model, c.quotient[ w ] ).bisimilar ) << "seed " << seed;
    }
}

TEST( BisimProperties, NormalizationIsIdempotentAndNormal )
{
    for ( std::uint64_t seed = 1; seed <= 300; ++seed )
    {
        const auto m = oracle::random_model( seed );
        const auto n = normalize( m );
        EXPECT_TRUE( validate( n ).empty() );
        EXPECT_EQ( normalize( n ), n ) << "seed " << seed;
        EXPECT_EQ( largest_autobisimulation( n ), largest_autobisimulation( m ) ) << "seed " << seed;
    }
}

TEST( BisimProperties, BisimilarityIsAnEquivalence )
{
    std::mt19937_64 rng{ 3 };
    std::vector<PlausibilityModel> models;
    // Bisimilar copies are common in the contraction of a model against itself.
    for ( std::uint64_t seed = 1; seed <= 40; ++seed )
    {
        auto m = oracle::random_model( seed, { 4, 2, 2 } );
        models.push_back( contract( m ).model );
        models.push_back( std::move( m ) );
    }
    auto pick = [ & ] {
        const auto& m = models[ rng() % models.size() ];
        return std::pair<const PlausibilityModel*, std::size_t>{ &m, rng() % m.size() };
    };
    for ( int i = 0; i < 2000; ++i )
    {
        auto [ m1, w1 ] = pick();
        auto [ m2, w2 ] = pick();
        auto [ m3, w3 ] = pick();
        const bool b12 = bisimilar( *m1, w1, *m2, w2 ).bisimilar;
        EXPECT_TRUE( bisimilar( *m1, w1, *m1, w1 ).bisimilar );
        EXPECT_EQ( b12, bisimilar( *m2, w2, *m1, w1 ).bisimilar );
        if ( b12 && bisimilar( *m2, w2, *m3, w3 ).bisimilar )
            EXPECT_TRUE( bisimilar( *m1, w1, *m3, w3 ).bisimilar );
    }
}

TEST( BisimProperties, EquiplausibleUnderAnyRelation )
{
    std::mt19937_64 rng{ 17 };
    for ( std::uint64_t seed = 1; seed <= 300; ++seed )
    {
        const auto m = oracle::random_model( seed );
        Relation r{ m.size() };
        for ( std::size_t x = 0; x < m.size(); ++x )
            for ( std::size_t y = 0; y < m.size(); ++y )
                if ( rng() % 4 == 0 )
                    r.insert( x, y );
        const auto closure = equivalence_closure( r );
        for ( std::size_t a = 0; a < m.agent_count(); ++a )
        {
            const auto d = derived_relation( m, r, a );
            EXPECT_EQ( d, derived_relation( m, closure, a ) );
            for ( std::size_t x = 0; x < m.size(); ++x )
                for ( std::size_t y = 0; y < m.size(); ++y )
                    if ( closure.related( x, y ) && m.same_class( a, x, y ) )
                        EXPECT_TRUE( d.contains( x, y ) && d.contains( y, x ) ) << "seed " << seed;
        }
    }
}

TEST( BisimProperties, DistinguishingFormulasAreVerified )
{
    for ( std::uint64_t seed = 1; seed <= 300; ++seed )
    {
        const auto m = oracle::random_model( seed );
        const ModelChecker c{ m };
        for ( std::size_t w = 0; w < m.size(); ++w )
            for ( std::size_t v = 0; v < m.size(); ++v )
            {
                if ( c.largest().related( w, v ) )
                {
                    EXPECT_THROW( (void)distinguishing_formula( m, w, v ), SemanticError );
                    continue;
                }
                const auto phi = distinguishing_formula( m, w, v );
                EXPECT_TRUE( c.satisfies( w, phi ) && !c.satisfies( v, phi ) ) << "seed " << seed;
                EXPECT_TRUE( classify( phi ).subset_of( LanguageTag::from_letters( "C" ) ) );
            }
    }
}
