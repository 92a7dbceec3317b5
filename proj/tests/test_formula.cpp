#include "plaus/error.hpp"
#include "plaus/formula.hpp"
#include "plaus/oracle.hpp"
#include "plaus/semantics.hpp"

#include <gtest/gtest.h>

using namespace plaus;

TEST( Parse, ConditionalWithNestedBelief )
{
    const auto x = parse_formula( "B[a | ~B[b] q] K[b] ~q" );
    const auto expected = f::cond( "a", f::neg( f::cond( "b", f::top(), f::atom( "q" ) ) ),
                                   f::know( "b", f::neg( f::atom( "q" ) ) ) );
    EXPECT_TRUE( equal( x, expected ) );
}

TEST( Parse, SafeBeliefAndItsDual )
{
    const auto x = parse_formula( "[][a] <>[b] p" );
    EXPECT_TRUE( equal( x, f::safe( "a", f::neg( f::safe( "b", f::neg( f::atom( "p" ) ) ) ) ) ) );
    EXPECT_EQ( to_string( x ), "[][a] <>[b] p" );
}

TEST( Parse, DegreeOfBelief )
{
    const auto x = parse_formula( "B[a # 2] ~q" );
    ASSERT_EQ( x->op, Op::DegBelief );
    EXPECT_EQ( x->degree, 2u );
    EXPECT_EQ( x->name, "a" );
    EXPECT_TRUE( equal( x->lhs, f::neg( f::atom( "q" ) ) ) );
}

TEST( Parse, DualsExpandToNegations )
{
    EXPECT_TRUE( equal( parse_formula( "Khat[a] p" ), f::neg( f::know( "a", f::neg( f::atom( "p" ) ) ) ) ) );
    EXPECT_TRUE( equal( parse_formula( "Bhat[a | q] p" ),
                        f::neg( f::cond( "a", f::atom( "q" ), f::neg( f::atom( "p" ) ) ) ) ) );
    EXPECT_TRUE( equal( parse_formula( "Bhat[a # 1] p" ), f::neg( f::deg( "a", 1, f::neg( f::atom( "p" ) ) ) ) ) );
    EXPECT_TRUE( equal( parse_formula( "B[a] p" ), f::cond( "a", f::top(), f::atom( "p" ) ) ) );
}

TEST( Parse, PrecedenceAndAssociativity )
{
    EXPECT_TRUE( equal( parse_formula( "p & q | r -> s -> t" ),
                        f::implies( f::disj( f::conj( f::atom( "p" ), f::atom( "q" ) ), f::atom( "r" ) ),
                                    f::implies( f::atom( "s" ), f::atom( "t" ) ) ) ) );
    EXPECT_TRUE( equal( parse_formula( "K[a] p & q" ), f::conj( f::know( "a", f::atom( "p" ) ), f::atom( "q" ) ) ) );
    EXPECT_TRUE( equal( parse_formula( "~p & q" ), f::conj( f::neg( f::atom( "p" ) ), f::atom( "q" ) ) ) );
    EXPECT_TRUE( equal( parse_formula( "p & q & r" ),
                        f::conj( f::conj( f::atom( "p" ), f::atom( "q" ) ), f::atom( "r" ) ) ) );
}

TEST( Parse, ReportsErrorPositions )
{
    try
    {
        (void)parse_formula( "p & " );
        FAIL() << "no error";
    }
    catch ( const ParseError& e )
    {
        EXPECT_EQ( e.position(), 4u );
    }
    try
    {
        (void)parse_formula( "K[a p" );
        FAIL() << "no error";
    }
    catch ( const ParseError& e )
    {
        EXPECT_EQ( e.position(), 4u );
    }
    EXPECT_THROW( (void)parse_formula( "" ), ParseError );
    EXPECT_THROW( (void)parse_formula( "p q" ), ParseError );
    EXPECT_THROW( (void)parse_formula( "(p" ), ParseError );
    EXPECT_THROW( (void)parse_formula( "B[a # x] p" ), ParseError );
    EXPECT_THROW( (void)parse_formula( "X[a] p" ), ParseError );
    EXPECT_THROW( (void)parse_formula( "p $ q" ), ParseError );
    EXPECT_THROW( (void)parse_formula( "K p" ), ParseError );
}

TEST( Print, CanonicalForms )
{
    EXPECT_EQ( to_string( parse_formula( "B[a|true]p" ) ), "B[a] p" );
    EXPECT_EQ( to_string( parse_formula( "~ ( p & q )" ) ), "~(p & q)" );
    EXPECT_EQ( to_string( parse_formula( "(p -> q) -> r" ) ), "(p -> q) -> r" );
    EXPECT_EQ( to_string( parse_formula( "p -> (q -> r)" ) ), "p -> q -> r" );
    EXPECT_EQ( to_string( parse_formula( "p | (q | r)" ) ), "p | (q | r)" );
    EXPECT_EQ( to_string( parse_formula( "K[a] (p & q)" ) ), "K[a] (p & q)" );
    EXPECT_EQ( to_string( parse_formula( "~K[a] ~p" ) ), "Khat[a] p" );
    EXPECT_EQ( to_string( parse_formula( "~~p" ) ), "~~p" );
}

TEST( ModalDepth, Examples )
{
    EXPECT_EQ( modal_depth( parse_formula( "p" ) ), 0u );
    EXPECT_EQ( modal_depth( parse_formula( "K[a] p" ) ), 1u );
    EXPECT_EQ( modal_depth( parse_formula( "B[a | K[b] p] q" ) ), 2u );
    EXPECT_EQ( formula_size( parse_formula( "p & ~q" ) ), 4u );
}

TEST( Classify, Examples )
{
    EXPECT_EQ( to_string( classify( parse_formula( "B[a|p] q" ) ) ), "C" );
    EXPECT_EQ( to_string( classify( parse_formula( "B[a#1] p" ) ) ), "D" );
    EXPECT_EQ( to_string( classify( parse_formula( "K[a] p" ) ) ), "" );
    EXPECT_EQ( to_string( classify( parse_formula( "[][a] p & B[b # 0] q" ) ) ), "DS" );
    EXPECT_TRUE( LanguageTag{}.subset_of( LanguageTag::from_letters( "C" ) ) );
    EXPECT_FALSE( LanguageTag::from_letters( "CD" ).subset_of( LanguageTag::from_letters( "C" ) ) );
}

TEST( Symbols, PropositionsAndAgents )
{
    const auto x = parse_formula( "B[a | p] K[b] (q -> r)" );
    EXPECT_EQ( propositions_of( x ), ( std::set<std::string>{ "p", "q", "r" } ) );
    EXPECT_EQ( agents_of( x ), ( std::set<std::string>{ "a", "b" } ) );
}

TEST( FormulaProperties, PrintParseRoundTrip )
{
    oracle::FormulaBounds b;
    b.props = { "p", "q", "r" };
    b.agents = { "a", "b" };
    b.language = LanguageTag::from_letters( "CDS" );
    b.depth = 3;
    std::mt19937_64 rng{ 11 };
    for ( int i = 0; i < 2000; ++i )
    {
        const auto x = oracle::random_formula( rng, b );
        const auto text = to_string( x );
        const auto back = parse_formula( text );
        EXPECT_TRUE( equal( back, x ) ) << text;
        EXPECT_EQ( to_string( back ), text );
    }
}

TEST( FormulaProperties, PrintIsStableUnderWhitespace )
{
    for ( const char* text : { "B[a|~B[b]q]K[b]~q", "  [][a]   <>[b]  p ", "B[ a # 3 ]( p|q )->r" } )
    {
        const auto once = to_string( parse_formula( text ) );
        EXPECT_EQ( to_string( parse_formula( once ) ), once );
    }
}

TEST( FormulaProperties, DesugaringPreservesTruth )
{
    for ( std::uint64_t seed = 1; seed <= 200; ++seed )
    {
        std::mt19937_64 rng{ seed };
        const auto m = oracle::random_model( rng );
        const auto b = oracle::bounds_for( m, LanguageTag::from_letters( "CDS" ), 2 );
        const auto x = oracle::random_formula( rng, b );
        const auto d = desugar( x );
        EXPECT_EQ( extension( m, x ), extension( m, d ) ) << to_string( x );
        EXPECT_EQ( to_string( classify( x ) ), to_string( classify( d ) ) );
    }
}
