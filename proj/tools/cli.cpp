#include "cli.hpp"

#include "plaus/bisim.hpp"
#include "plaus/error.hpp"
#include "plaus/fixtures.hpp"
#include "plaus/formula.hpp"
#include "plaus/io.hpp"
#include "plaus/oracle.hpp"
#include "plaus/semantics.hpp"
#include "plaus/translate.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace plaus::cli
{

namespace
{

using nlohmann::json;

struct Options
{
    std::string model;
    std::string model2;
    std::string world;
    std::string world2;
    std::string formula;
    std::string semantics = "normal";
    std::string format = "text";
    std::string to;
    std::string fixture;
    std::optional<std::size_t> param;
    std::uint64_t seed = 1;
    std::size_t seeds = 100;
    std::size_t formulas = 50;
    std::size_t depth = 2;
    std::size_t max_brute = 8;
    bool expand_knowledge = false;
};

constexpr const char* fixture_prefix = "fixture:";

json read_document( const std::string& source )
{
    if ( source.rfind( fixture_prefix, 0 ) == 0 )
        return model_to_json( fixtures::build( fixtures::parse_id( source.substr( std::string( fixture_prefix ).size() ) ) ) );
    std::ifstream in{ source };
    if ( !in )
        throw ParseError( "cannot read model file '" + source + "'" );
    try
    {
        return json::parse( in );
    }
    catch ( const json::parse_error& e )
    {
        throw ParseError( std::string( "malformed JSON: " ) + e.what(), e.byte );
    }
}

PlausibilityModel load( const std::string& source ) { return load_model_json( read_document( source ) ); }

json world_list( const PlausibilityModel& m, const WorldSet& s )
{
    json out = json::array();
    for ( auto w : s.members() )
        out.push_back( m.world( w ) );
    return out;
}

std::string world_text( const PlausibilityModel& m, const WorldSet& s )
{
    std::string out = "{";
    for ( auto w : s.members() )
        out += ( out.size() > 1 ? ", " : "" ) + m.world( w );
    return out + "}";
}

json blocks_json( const PlausibilityModel& m, const EquivRelation& r )
{
    json out = json::array();
    for ( const auto& b : r.blocks() )
        out.push_back( world_list( m, b ) );
    return out;
}

class Runner
{
public:
    Runner( const Options& o, std::ostream& out ) : _o{ o }, _out{ out } {}

    int validate()
    {
        const auto m = load_model_json( read_document( _o.model ), false );
        const auto violations = plaus::validate( m );
        if ( json_format() )
        {
            json list = json::array();
            for ( const auto& v : violations )
                list.push_back( { { "invariant", v.invariant }, { "agent", v.agent }, { "x", v.x }, { "y", v.y } } );
            emit( { { "command", "validate" }, { "valid", violations.empty() }, { "violations", list } } );
        }
        else if ( violations.empty() )
            _out << "valid\n";
        else
            for ( const auto& v : violations )
                _out << describe( v ) << "\n";
        return violations.empty() ? ok : invalid_input;
    }

    int check()
    {
        const auto m = load( _o.model );
        const auto f = parse_formula( _o.formula );
        const bool value = satisfies( m, m.world_index( _o.world ), f, mode() );
        if ( json_format() )
            emit( { { "command", "check" },
                    { "world", _o.world },
                    { "formula", to_string( f ) },
                    { "semantics", _o.semantics },
                    { "value", value } } );
        else
            _out << ( value ? "true" : "false" ) << "\n";
        return ok;
    }

    int extension()
    {
        const auto m = load( _o.model );
        const auto f = parse_formula( _o.formula );
        const auto ext = plaus::extension( m, f, mode() );
        if ( json_format() )
            emit( { { "command", "extension" },
                    { "formula", to_string( f ) },
                    { "semantics", _o.semantics },
                    { "worlds", world_list( m, ext ) } } );
        else
            _out << world_text( m, ext ) << "\n";
        return ok;
    }

    int bisim()
    {
        const auto m = load( _o.model );
        if ( _o.world.empty() )
        {
            if ( !_o.model2.empty() || !_o.world2.empty() )
                throw CLI::ValidationError( "--world is required with --model2 or --world2" );
            // No points: print the largest autobisimulation of the model.
            const auto r = largest_autobisimulation( m, { _o.max_brute } );
            if ( json_format() )
                emit( { { "command", "bisim" }, { "blocks", blocks_json( m, r ) } } );
            else
                for ( const auto& b : r.blocks() )
                    _out << world_text( m, b ) << "\n";
            return ok;
        }
        if ( _o.world2.empty() )
            throw CLI::ValidationError( "--world2 is required with --world" );
        const auto m2 = _o.model2.empty() ? m : load( _o.model2 );
        const auto result = bisimilar( m, m.world_index( _o.world ), m2, m2.world_index( _o.world2 ) );
        if ( json_format() )
        {
            json rel = json::array();
            for ( auto [ x, y ] : result.relation )
                rel.push_back( { m.world( x ), m2.world( y ) } );
            emit( { { "command", "bisim" }, { "bisimilar", result.bisimilar }, { "relation", rel } } );
            return ok;
        }
        _out << ( result.bisimilar ? "bisimilar" : "not bisimilar" ) << "\n";
        if ( result.bisimilar )
            for ( auto [ x, y ] : result.relation )
                _out << m.world( x ) << " " << m2.world( y ) << "\n";
        return ok;
    }

    int contract()
    {
        const auto m = load( _o.model );
        const auto c = plaus::contract( m );
        if ( _o.format == "json" )
        {
            json quotient = json::object();
            for ( std::size_t w = 0; w < m.size(); ++w )
                quotient[ m.world( w ) ] = c.model.world( c.quotient[ w ] );
            emit( { { "command", "contract" }, { "model", model_to_json( c.model ) }, { "quotient", quotient } } );
            return ok;
        }
        print_model( c.model );
        return ok;
    }

    int normalize()
    {
        const auto n = plaus::normalize( load( _o.model ) );
        if ( _o.format == "json" )
            emit( { { "command", "normalize" }, { "model", model_to_json( n ) } } );
        else
            print_model( n );
        return ok;
    }

    int translate()
    {
        auto input = parse_formula( _o.formula );
        auto f = _o.expand_knowledge ? expand_knowledge( input ) : input;
        if ( !_o.to.empty() )
        {
            const auto source = classify( f );
            const auto target = LanguageTag::from_letters( _o.to );
            const auto c_only = LanguageTag::from_letters( "C" );
            if ( source.subset_of( target ) )
            {
                // Already in the target language.
            }
            else if ( !source.subset_of( c_only ) )
            {
                // D and S are each inexpressible in the other languages.
                const bool foreign = ( source.degrees && !target.degrees ) || ( source.safe && !target.safe );
                throw SemanticError( foreign ? "no general translation exists from L^" + plaus::to_string( source ) + " to L^" + _o.to
                                             : "translation to L^" + _o.to + " takes formulas of L^C" );
            }
            else if ( _o.to == "S" )
                f = cond_to_safe( f );
            else
            {
                if ( _o.model.empty() || _o.world.empty() )
                    throw CLI::ValidationError( "translation to D needs --model and --world" );
                const auto m = load( _o.model );
                f = cond_to_degrees( m, m.world_index( _o.world ), f );
            }
        }

        if ( json_format() )
            emit( { { "command", "translate" },
                    { "input", to_string( input ) },
                    { "output", to_string( f ) },
                    { "to", _o.to },
                    { "language", plaus::to_string( classify( f ) ) } } );
        else
            _out << to_string( f ) << "\n";
        return ok;
    }

    // "MK" with --param: the kind name alone, or a full id whose parameter gets replaced.
    static fixtures::FixtureId bare_id( const std::string& text )
    {
        if ( text.find( '?' ) != std::string::npos )
            return fixtures::parse_id( text );
        for ( const auto kind : fixtures::all_kinds() )
        {
            const auto full = fixtures::name( { kind, 1 } );
            if ( full == text || full.rfind( text + "?", 0 ) == 0 )
                return { kind, 1 };
        }
        return fixtures::parse_id( text );
    }

    int fixture()
    {
        auto id = _o.param ? bare_id( _o.fixture ) : fixtures::parse_id( _o.fixture );
        if ( _o.param )
        {
            if ( !fixtures::parameterized( id.kind ) )
                throw CLI::ValidationError( "fixture " + _o.fixture + " takes no parameter" );
            id.param = *_o.param;
        }
        const auto m = fixtures::build( id );
        if ( _o.format == "json" )
            emit( { { "command", "fixture" }, { "id", fixtures::name( id ) }, { "model", model_to_json( m ) } } );
        else
            print_model( m );
        return ok;
    }

    int oracle_largest()
    {
        const auto m = load( _o.model );
        const auto r = oracle::oracle_largest( m, _o.max_brute );
        if ( json_format() )
            emit( { { "command", "oracle largest" }, { "blocks", blocks_json( m, r ) } } );
        else
            for ( const auto& b : r.blocks() )
                _out << world_text( m, b ) << "\n";
        return ok;
    }

    int oracle_fuzz()
    {
        oracle::FuzzOptions opts;
        opts.seeds = _o.seeds;
        opts.first_seed = _o.seed;
        opts.formulas_per_language = _o.formulas;
        opts.depth = _o.depth;
        const auto r = oracle::fuzz( opts );
        json failures = json::array();
        for ( const auto& f : r.failures )
            failures.push_back( { { "seed", f.seed }, { "check", f.check }, { "detail", f.detail } } );
        // Counterexamples are always reported as JSON.
        emit( { { "command", "oracle fuzz" },
                { "models", r.models },
                { "nontrivial_models", r.nontrivial_models },
                { "bisimilar_pairs", r.bisimilar_pairs },
                { "distinguished_pairs", r.distinguished_pairs },
                { "formula_checks", r.formula_checks },
                { "failures", failures } } );
        return r.failures.empty() ? ok : internal;
    }

    int distinguish()
    {
        const auto m = load( _o.model );
        const auto f = distinguishing_formula( m, m.world_index( _o.world ), m.world_index( _o.world2 ) );
        if ( json_format() )
            emit( { { "command", "distinguish" },
                    { "world", _o.world },
                    { "world2", _o.world2 },
                    { "formula", to_string( f ) } } );
        else
            _out << to_string( f ) << "\n";
        return ok;
    }

private:
    [[nodiscard]] bool json_format() const
    {
        if ( _o.format == "dot" )
            throw CLI::ValidationError( "--format dot only applies to commands that output a model" );
        return _o.format == "json";
    }

    [[nodiscard]] SemanticsMode mode() const { return parse_mode( _o.semantics ); }

    void emit( const json& j ) { _out << j.dump( 2 ) << "\n"; }

    void print_model( const PlausibilityModel& m )
    {
        if ( _o.format == "dot" )
            _out << model_to_dot( m );
        else
            emit( model_to_json( m ) );
    }

    const Options& _o;
    std::ostream& _out;
};

} // namespace

int run( const std::vector<std::string>& args, std::ostream& out, std::ostream& err )
{
    Options o;
    CLI::App app{ "Plausibility models: model checking, bisimulation and translations", "plaus" };
    app.require_subcommand( 1 );
    app.fallthrough();
    app.add_option( "--format", o.format, "Output format" )
            ->check( CLI::IsMember( { "text", "json", "dot" } ) )
            ->capture_default_str();
    app.add_option( "--semantics", o.semantics, "Order used for safe belief and degrees" )
            ->check( CLI::IsMember( { "normal", "raw" } ) )
            ->capture_default_str();
    app.add_option( "--max-brute", o.max_brute, "Largest model enumerated exhaustively" )->capture_default_str();

    const std::string model_help = "Model JSON file, or fixture:ID";
    auto add_model = [ & ]( CLI::App* sub, bool required = true ) {
        auto* opt = sub->add_option( "--model", o.model, model_help );
        if ( required )
            opt->required();
    };

    auto* validate = app.add_subcommand( "validate", "List violated model invariants" );
    add_model( validate );

    auto* check = app.add_subcommand( "check", "Truth of a formula at a world" );
    add_model( check );
    check->add_option( "--world", o.world )->required();
    check->add_option( "--formula", o.formula )->required();

    auto* ext = app.add_subcommand( "extension", "Worlds where a formula holds" );
    add_model( ext );
    ext->add_option( "--formula", o.formula )->required();

    auto* bisim = app.add_subcommand( "bisim", "Largest autobisimulation, or bisimilarity of two points" );
    add_model( bisim );
    bisim->add_option( "--world", o.world );
    bisim->add_option( "--model2", o.model2, "Second model (default: the first)" );
    bisim->add_option( "--world2", o.world2 );

    auto* contract = app.add_subcommand( "contract", "Quotient by the largest autobisimulation" );
    add_model( contract );

    auto* normalize = app.add_subcommand( "normalize", "Replace each order by the normal plausibility relation" );
    add_model( normalize );

    auto* translate = app.add_subcommand( "translate", "Translate a formula between languages" );
    translate->add_option( "--formula", o.formula )->required();
    translate->add_option( "--to", o.to, "Target language" )->check( CLI::IsMember( { "C", "D", "S" } ) );
    translate->add_flag( "--expand-knowledge", o.expand_knowledge, "Rewrite K[a] f as B[a | ~f] false first" );
    add_model( translate, false );
    translate->add_option( "--world", o.world, "Point of the translation to D" );

    auto* fixture = app.add_subcommand( "fixture", "Emit a built-in model" );
    fixture->add_option( "id", o.fixture, "Fixture name, e.g. MC or MK?k=3" )->required();
    fixture->add_option( "--param", o.param, "k for MK/NK, i for DEMEY_CHAIN" );

    auto* orc = app.add_subcommand( "oracle", "Brute-force reference implementations" );
    orc->require_subcommand( 1 );
    auto* largest = orc->add_subcommand( "largest", "Largest autobisimulation by enumerating partitions" );
    largest->add_option( "model", o.model, model_help )->required();
    auto* fuzz = orc->add_subcommand( "fuzz", "Engine against oracle on random models" );
    fuzz->add_option( "--seeds", o.seeds )->capture_default_str();
    fuzz->add_option( "--seed", o.seed, "First seed" )->capture_default_str();
    fuzz->add_option( "--formulas", o.formulas, "Random formulas per language" )->capture_default_str();
    fuzz->add_option( "--depth", o.depth, "Modal depth of random formulas" )->capture_default_str();

    auto* distinguish = app.add_subcommand( "distinguish", "Formula true at --world and false at --world2" );
    add_model( distinguish );
    distinguish->add_option( "--world", o.world )->required();
    distinguish->add_option( "--world2", o.world2 )->required();

    // CLI11 consumes the argument vector from the back.
    std::vector<std::string> reversed( args.rbegin(), args.rend() );
    try
    {
        app.parse( reversed );
    }
    catch ( const CLI::ParseError& e )
    {
        const int code = app.exit( e, out, err );
        return code == 0 ? ok : usage;
    }

    Runner r{ o, out };
    try
    {
        if ( *validate )
            return r.validate();
        if ( *check )
            return r.check();
        if ( *ext )
            return r.extension();
        if ( *bisim )
            return r.bisim();
        if ( *contract )
            return r.contract();
        if ( *normalize )
            return r.normalize();
        if ( *translate )
            return r.translate();
        if ( *fixture )
            return r.fixture();
        if ( *largest )
            return r.oracle_largest();
        if ( *fuzz )
            return r.oracle_fuzz();
        if ( *distinguish )
            return r.distinguish();
    }
    catch ( const CLI::Error& e )
    {
        err << "error: " << e.what() << "\n";
        return usage;
    }
    catch ( const ParseError& e )
    {
        err << "error: " << e.what() << "\n";
        return invalid_input;
    }
    catch ( const ValidationError& e )
    {
        err << "error: invalid model: " << e.what() << "\n";
        return invalid_input;
    }
    catch ( const SemanticError& e )
    {
        err << "error: " << e.what() << "\n";
        return semantic;
    }
    catch ( const BoundExceeded& e )
    {
        err << "error: " << e.what() << "\n";
        return bound;
    }
    catch ( const Error& e )
    {
        err << "internal error: " << e.what() << "\n";
        return internal;
    }
    return usage;
}

} // namespace plaus::cli
