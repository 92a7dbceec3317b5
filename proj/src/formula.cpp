#include "plaus/formula.hpp"

#include "plaus/error.hpp"

#include <algorithm>
#include <cctype>
#include <vector>

namespace plaus
{

namespace f
{

namespace
{

FormulaPtr make( Op op, std::string name, std::size_t degree, FormulaPtr lhs, FormulaPtr rhs )
{
    return std::make_shared<const Formula>( Formula{ op, std::move( name ), degree, std::move( lhs ), std::move( rhs ) } );
}

} // namespace

FormulaPtr atom( std::string prop ) { return make( Op::Atom, std::move( prop ), 0, nullptr, nullptr ); }
FormulaPtr top()
{
    static const FormulaPtr t = make( Op::Top, "", 0, nullptr, nullptr );
    return t;
}
FormulaPtr bot()
{
    static const FormulaPtr b = make( Op::Bot, "", 0, nullptr, nullptr );
    return b;
}
FormulaPtr neg( FormulaPtr x ) { return make( Op::Not, "", 0, std::move( x ), nullptr ); }
FormulaPtr conj( FormulaPtr x, FormulaPtr y ) { return make( Op::And, "", 0, std::move( x ), std::move( y ) ); }
FormulaPtr disj( FormulaPtr x, FormulaPtr y ) { return make( Op::Or, "", 0, std::move( x ), std::move( y ) ); }
FormulaPtr implies( FormulaPtr x, FormulaPtr y ) { return make( Op::Implies, "", 0, std::move( x ), std::move( y ) ); }
FormulaPtr know( std::string agent, FormulaPtr body ) { return make( Op::Know, std::move( agent ), 0, std::move( body ), nullptr ); }
FormulaPtr cond( std::string agent, FormulaPtr condition, FormulaPtr body )
{
    return make( Op::CondBelief, std::move( agent ), 0, std::move( condition ), std::move( body ) );
}
FormulaPtr deg( std::string agent, std::size_t n, FormulaPtr body )
{
    return make( Op::DegBelief, std::move( agent ), n, std::move( body ), nullptr );
}
FormulaPtr safe( std::string agent, FormulaPtr body ) { return make( Op::SafeBelief, std::move( agent ), 0, std::move( body ), nullptr ); }

FormulaPtr khat( std::string agent, FormulaPtr body ) { return neg( know( std::move( agent ), neg( std::move( body ) ) ) ); }
FormulaPtr belief( std::string agent, FormulaPtr body ) { return cond( std::move( agent ), top(), std::move( body ) ); }
FormulaPtr bhat( std::string agent, FormulaPtr condition, FormulaPtr body )
{
    return neg( cond( std::move( agent ), std::move( condition ), neg( std::move( body ) ) ) );
}
FormulaPtr bhat_deg( std::string agent, std::size_t n, FormulaPtr body )
{
    return neg( deg( std::move( agent ), n, neg( std::move( body ) ) ) );
}
FormulaPtr diamond( std::string agent, FormulaPtr body ) { return neg( safe( std::move( agent ), neg( std::move( body ) ) ) ); }

} // namespace f

// ---------------------------------------------------------------------------
// Lexer / parser

namespace
{

enum class Tok
{
    Ident,
    Nat,
    Tilde,
    Amp,
    Bar,
    Arrow,
    LParen,
    RParen,
    LBrack,
    RBrack,
    Hash,
    Box,
    Diamond,
    End,
};

struct Token
{
    Tok kind;
    std::string text;
    std::size_t pos;
};

std::vector<Token> lex( std::string_view s )
{
    std::vector<Token> out;
    std::size_t i = 0;
    while ( i < s.size() )
    {
        const char c = s[ i ];
        if ( std::isspace( static_cast<unsigned char>( c ) ) )
        {
            ++i;
            continue;
        }
        const std::size_t start = i;
        if ( std::isalpha( static_cast<unsigned char>( c ) ) || c == '_' )
        {
            while ( i < s.size() && ( std::isalnum( static_cast<unsigned char>( s[ i ] ) ) || s[ i ] == '_' ) )
                ++i;
            out.push_back( { Tok::Ident, std::string( s.substr( start, i - start ) ), start } );
            continue;
        }
        if ( std::isdigit( static_cast<unsigned char>( c ) ) )
        {
            while ( i < s.size() && std::isdigit( static_cast<unsigned char>( s[ i ] ) ) )
                ++i;
            out.push_back( { Tok::Nat, std::string( s.substr( start, i - start ) ), start } );
            continue;
        }
        auto two = [ & ]( char next ) { return i + 1 < s.size() && s[ i + 1 ] == next; };
        switch ( c )
        {
        case '~': out.push_back( { Tok::Tilde, "~", start } ); ++i; break;
        case '&': out.push_back( { Tok::Amp, "&", start } ); ++i; break;
        case '|': out.push_back( { Tok::Bar, "|", start } ); ++i; break;
        case '(': out.push_back( { Tok::LParen, "(", start } ); ++i; break;
        case ')': out.push_back( { Tok::RParen, ")", start } ); ++i; break;
        case ']': out.push_back( { Tok::RBrack, "]", start } ); ++i; break;
        case '#': out.push_back( { Tok::Hash, "#", start } ); ++i; break;
        case '[':
            if ( two( ']' ) )
            {
                out.push_back( { Tok::Box, "[]", start } );
                i += 2;
            }
            else
            {
                out.push_back( { Tok::LBrack, "[", start } );
                ++i;
            }
            break;
        case '-':
            if ( !two( '>' ) )
                throw ParseError( "expected '->'", start );
            out.push_back( { Tok::Arrow, "->", start } );
            i += 2;
            break;
        case '<':
            if ( !two( '>' ) )
                throw ParseError( "expected '<>'", start );
            out.push_back( { Tok::Diamond, "<>", start } );
            i += 2;
            break;
        default: throw ParseError( std::string( "unexpected character '" ) + c + "'", start );
        }
    }
    out.push_back( { Tok::End, "", s.size() } );
    return out;
}

bool is_keyword( const std::string& s )
{
    return s == "K" || s == "Khat" || s == "B" || s == "Bhat" || s == "true" || s == "false";
}

class Parser
{
public:
    explicit Parser( std::string_view text ) : _toks{ lex( text ) } {}

    FormulaPtr parse()
    {
        auto f = implication();
        if ( peek().kind != Tok::End )
            fail( "unexpected '" + peek().text + "'" );
        return f;
    }

private:
    const Token& peek() const { return _toks[ _i ]; }
    const Token& take() { return _toks[ _i++ ]; }

    [[noreturn]] void fail( const std::string& msg ) const { throw ParseError( msg, peek().pos ); }

    const Token& expect( Tok kind, const char* what )
    {
        if ( peek().kind != kind )
            fail( std::string( "expected " ) + what );
        return take();
    }

    FormulaPtr implication()
    {
        auto lhs = disjunction();
        if ( peek().kind == Tok::Arrow )
        {
            take();
            return f::implies( lhs, implication() );
        }
        return lhs;
    }

    FormulaPtr disjunction()
    {
        auto lhs = conjunction();
        while ( peek().kind == Tok::Bar )
        {
            take();
            lhs = f::disj( lhs, conjunction() );
        }
        return lhs;
    }

    FormulaPtr conjunction()
    {
        auto lhs = unary();
        while ( peek().kind == Tok::Amp )
        {
            take();
            lhs = f::conj( lhs, unary() );
        }
        return lhs;
    }

    std::string agent()
    {
        const auto& t = expect( Tok::Ident, "agent name" );
        if ( is_keyword( t.text ) )
            throw ParseError( "keyword '" + t.text + "' used as agent", t.pos );
        return t.text;
    }

    FormulaPtr unary()
    {
        const Token& t = peek();
        switch ( t.kind )
        {
        case Tok::Tilde: take(); return f::neg( unary() );
        case Tok::LParen:
        {
            take();
            auto inner = implication();
            expect( Tok::RParen, "')'" );
            return inner;
        }
        case Tok::Box:
        case Tok::Diamond:
        {
            const bool box = take().kind == Tok::Box;
            expect( Tok::LBrack, "'['" );
            auto a = agent();
            expect( Tok::RBrack, "']'" );
            auto body = unary();
            return box ? f::safe( a, body ) : f::diamond( a, body );
        }
        case Tok::Ident: return identifier();
        default: fail( t.kind == Tok::End ? "unexpected end of formula" : "unexpected '" + t.text + "'" );
        }
    }

    FormulaPtr identifier()
    {
        const Token t = take();
        if ( t.text == "true" )
            return f::top();
        if ( t.text == "false" )
            return f::bot();
        if ( t.text == "K" || t.text == "Khat" )
        {
            expect( Tok::LBrack, "'['" );
            auto a = agent();
            expect( Tok::RBrack, "']'" );
            auto body = unary();
            return t.text == "K" ? f::know( a, body ) : f::khat( a, body );
        }
        if ( t.text == "B" || t.text == "Bhat" )
        {
            const bool dual = t.text == "Bhat";
            expect( Tok::LBrack, "'['" );
            auto a = agent();
            if ( peek().kind == Tok::Hash )
            {
                take();
                const auto& n = expect( Tok::Nat, "degree" );
                std::size_t degree = 0;
                try
                {
                    degree = std::stoul( n.text );
                }
                catch ( const std::exception& )
                {
                    throw ParseError( "degree out of range", n.pos );
                }
                expect( Tok::RBrack, "']'" );
                auto body = unary();
                return dual ? f::bhat_deg( a, degree, body ) : f::deg( a, degree, body );
            }
            FormulaPtr condition = f::top();
            if ( peek().kind == Tok::Bar )
            {
                take();
                condition = implication();
            }
            expect( Tok::RBrack, "']'" );
            auto body = unary();
            return dual ? f::bhat( a, condition, body ) : f::cond( a, condition, body );
        }
        if ( _i < _toks.size() && peek().kind == Tok::LBrack )
            throw ParseError( "unknown operator '" + t.text + "'", t.pos );
        return f::atom( t.text );
    }

    std::vector<Token> _toks;
    std::size_t _i = 0;
};

// ---------------------------------------------------------------------------
// Printer

int precedence( const FormulaPtr& x )
{
    switch ( x->op )
    {
    case Op::Implies: return 1;
    case Op::Or: return 2;
    case Op::And: return 3;
    default: return 4;
    }
}

void print( const FormulaPtr& x, std::string& out );

void print_at( const FormulaPtr& x, int min_prec, std::string& out )
{
    if ( precedence( x ) < min_prec )
    {
        out += '(';
        print( x, out );
        out += ')';
    }
    else
        print( x, out );
}

void print( const FormulaPtr& x, std::string& out )
{
    switch ( x->op )
    {
    case Op::Atom: out += x->name; return;
    case Op::Top: out += "true"; return;
    case Op::Bot: out += "false"; return;
    case Op::Not:
    {
        const auto& in = x->lhs;
        if ( in->is_modal() && in->body()->op == Op::Not )
        {
            const auto& body = in->body()->lhs;
            switch ( in->op )
            {
            case Op::Know: out += "Khat[" + in->name + "] "; break;
            case Op::SafeBelief: out += "<>[" + in->name + "] "; break;
            case Op::DegBelief: out += "Bhat[" + in->name + " # " + std::to_string( in->degree ) + "] "; break;
            default:
                out += "Bhat[" + in->name;
                if ( in->lhs->op != Op::Top )
                {
                    out += " | ";
                    print( in->lhs, out );
                }
                out += "] ";
                break;
            }
            print_at( body, 4, out );
            return;
        }
        out += '~';
        print_at( in, 4, out );
        return;
    }
    case Op::And:
        print_at( x->lhs, 3, out );
        out += " & ";
        print_at( x->rhs, 4, out );
        return;
    case Op::Or:
        print_at( x->lhs, 2, out );
        out += " | ";
        print_at( x->rhs, 3, out );
        return;
    case Op::Implies:
        print_at( x->lhs, 2, out );
        out += " -> ";
        print_at( x->rhs, 1, out );
        return;
    case Op::Know: out += "K[" + x->name + "] "; break;
    case Op::SafeBelief: out += "[][" + x->name + "] "; break;
    case Op::DegBelief: out += "B[" + x->name + " # " + std::to_string( x->degree ) + "] "; break;
    case Op::CondBelief:
        out += "B[" + x->name;
        if ( x->lhs->op != Op::Top )
        {
            out += " | ";
            print( x->lhs, out );
        }
        out += "] ";
        break;
    }
    print_at( x->body(), 4, out );
}

} // namespace

FormulaPtr parse_formula( std::string_view text ) { return Parser{ text }.parse(); }

std::string to_string( const FormulaPtr& x )
{
    std::string out;
    print( x, out );
    return out;
}

bool equal( const FormulaPtr& x, const FormulaPtr& y )
{
    if ( x == y )
        return true;
    if ( !x || !y )
        return false;
    return x->op == y->op && x->name == y->name && x->degree == y->degree && equal( x->lhs, y->lhs )
           && equal( x->rhs, y->rhs );
}

std::size_t modal_depth( const FormulaPtr& x )
{
    if ( !x )
        return 0;
    const std::size_t inner = std::max( modal_depth( x->lhs ), modal_depth( x->rhs ) );
    return x->is_modal() ? inner + 1 : inner;
}

std::size_t formula_size( const FormulaPtr& x )
{
    if ( !x )
        return 0;
    return 1 + formula_size( x->lhs ) + formula_size( x->rhs );
}

LanguageTag LanguageTag::from_letters( std::string_view letters )
{
    LanguageTag tag;
    for ( char c : letters )
    {
        switch ( c )
        {
        case 'C': tag.conditional = true; break;
        case 'D': tag.degrees = true; break;
        case 'S': tag.safe = true; break;
        default: throw ParseError( std::string( "unknown language letter '" ) + c + "'" );
        }
    }
    return tag;
}

std::string to_string( const LanguageTag& tag )
{
    std::string out;
    if ( tag.conditional )
        out += 'C';
    if ( tag.degrees )
        out += 'D';
    if ( tag.safe )
        out += 'S';
    return out;
}

LanguageTag classify( const FormulaPtr& x )
{
    LanguageTag tag;
    if ( !x )
        return tag;
    const auto l = classify( x->lhs );
    const auto r = classify( x->rhs );
    tag.conditional = l.conditional || r.conditional || x->op == Op::CondBelief;
    tag.degrees = l.degrees || r.degrees || x->op == Op::DegBelief;
    tag.safe = l.safe || r.safe || x->op == Op::SafeBelief;
    return tag;
}

FormulaPtr desugar( const FormulaPtr& x )
{
    switch ( x->op )
    {
    case Op::Atom: return x;
    case Op::Top: return f::neg( desugar( f::bot() ) );
    case Op::Bot:
    {
        auto p = f::atom( "p" );
        return f::conj( p, f::neg( p ) );
    }
    case Op::Not: return f::neg( desugar( x->lhs ) );
    case Op::And: return f::conj( desugar( x->lhs ), desugar( x->rhs ) );
    case Op::Or: return f::neg( f::conj( f::neg( desugar( x->lhs ) ), f::neg( desugar( x->rhs ) ) ) );
    case Op::Implies: return f::neg( f::conj( desugar( x->lhs ), f::neg( desugar( x->rhs ) ) ) );
    case Op::Know: return f::know( x->name, desugar( x->lhs ) );
    case Op::CondBelief: return f::cond( x->name, desugar( x->lhs ), desugar( x->rhs ) );
    case Op::DegBelief: return f::deg( x->name, x->degree, desugar( x->lhs ) );
    case Op::SafeBelief: return f::safe( x->name, desugar( x->lhs ) );
    }
    return x;
}

namespace
{

void collect( const FormulaPtr& x, std::set<std::string>& props, std::set<std::string>& agents )
{
    if ( !x )
        return;
    if ( x->op == Op::Atom )
        props.insert( x->name );
    else if ( x->is_modal() )
        agents.insert( x->name );
    collect( x->lhs, props, agents );
    collect( x->rhs, props, agents );
}

} // namespace

std::set<std::string> propositions_of( const FormulaPtr& x )
{
    std::set<std::string> props, agents;
    collect( x, props, agents );
    return props;
}

std::set<std::string> agents_of( const FormulaPtr& x )
{
    std::set<std::string> props, agents;
    collect( x, props, agents );
    return agents;
}

} // namespace plaus
