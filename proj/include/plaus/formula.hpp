#pragma once

#include <cstddef>
#include <memory>
#include <set>
#include <string>
#include <string_view>

namespace plaus
{

enum class Op
{
    Atom,
    Top,
    Bot,
    Not,
    And,
    Or,
    Implies,
    Know,       ///< K_a body
    CondBelief, ///< B_a^cond body
    DegBelief,  ///< B_a^n body
    SafeBelief, ///< []_a body
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

/// Immutable AST node. Subterms may be shared, so formulas form a DAG.
///
/// `name` holds the proposition for atoms and the agent for modalities.
/// Unary nodes use `lhs`; binary connectives use `lhs` and `rhs`;
/// CondBelief keeps the condition in `lhs` and the body in `rhs`.
struct Formula
{
    Op op;
    std::string name;
    std::size_t degree = 0;
    FormulaPtr lhs;
    FormulaPtr rhs;

    /// The believed/known formula of a modality.
    [[nodiscard]] const FormulaPtr& body() const { return op == Op::CondBelief ? rhs : lhs; }
    [[nodiscard]] bool is_modal() const
    {
        return op == Op::Know || op == Op::CondBelief || op == Op::DegBelief || op == Op::SafeBelief;
    }
};

namespace f
{

[[nodiscard]] FormulaPtr atom( std::string prop );
[[nodiscard]] FormulaPtr top();
[[nodiscard]] FormulaPtr bot();
[[nodiscard]] FormulaPtr neg( FormulaPtr x );
[[nodiscard]] FormulaPtr conj( FormulaPtr x, FormulaPtr y );
[[nodiscard]] FormulaPtr disj( FormulaPtr x, FormulaPtr y );
[[nodiscard]] FormulaPtr implies( FormulaPtr x, FormulaPtr y );
[[nodiscard]] FormulaPtr know( std::string agent, FormulaPtr body );
[[nodiscard]] FormulaPtr cond( std::string agent, FormulaPtr condition, FormulaPtr body );
[[nodiscard]] FormulaPtr deg( std::string agent, std::size_t n, FormulaPtr body );
[[nodiscard]] FormulaPtr safe( std::string agent, FormulaPtr body );

// Duals and abbreviations, expanded to primitive nodes.
[[nodiscard]] FormulaPtr khat( std::string agent, FormulaPtr body );
[[nodiscard]] FormulaPtr belief( std::string agent, FormulaPtr body );
[[nodiscard]] FormulaPtr bhat( std::string agent, FormulaPtr condition, FormulaPtr body );
[[nodiscard]] FormulaPtr bhat_deg( std::string agent, std::size_t n, FormulaPtr body );
[[nodiscard]] FormulaPtr diamond( std::string agent, FormulaPtr body );

} // namespace f

/// Parses the concrete syntax; throws ParseError carrying the byte offset.
///
///   formula := 'true' | 'false' | PROP | '~' formula | formula ('&' | '|' | '->') formula
///            | 'K[a]' formula | 'Khat[a]' formula | 'B[a]' formula | 'Bhat[a]' formula
///            | 'B[a | formula]' formula | 'Bhat[a | formula]' formula
///            | 'B[a # n]' formula | 'Bhat[a # n]' formula
///            | '[][a]' formula | '<>[a]' formula | '(' formula ')'
///
/// Prefix operators bind tightest, then '&', '|', '->'; '->' associates to the right.
[[nodiscard]] FormulaPtr parse_formula( std::string_view text );

/// Canonical text. Dual shapes such as ~K[a]~p are printed with their sugar
/// (Khat[a] p), and B[a | true] as B[a].
[[nodiscard]] std::string to_string( const FormulaPtr& f );

/// Deep structural equality.
[[nodiscard]] bool equal( const FormulaPtr& x, const FormulaPtr& y );

[[nodiscard]] std::size_t modal_depth( const FormulaPtr& f );
/// Number of nodes of the tree unfolding.
[[nodiscard]] std::size_t formula_size( const FormulaPtr& f );

struct LanguageTag
{
    bool conditional = false; ///< C
    bool degrees = false;     ///< D
    bool safe = false;        ///< S

    [[nodiscard]] bool subset_of( const LanguageTag& o ) const
    {
        return ( !conditional || o.conditional ) && ( !degrees || o.degrees ) && ( !safe || o.safe );
    }
    friend bool operator==( const LanguageTag&, const LanguageTag& ) = default;

    static LanguageTag from_letters( std::string_view letters );
};

/// Letters of the tag in CDS order, e.g. "CD"; empty for pure knowledge.
[[nodiscard]] std::string to_string( const LanguageTag& tag );

/// Least language containing every modality of f. Knowledge belongs to all.
[[nodiscard]] LanguageTag classify( const FormulaPtr& f );

/// Rewrites Or, Implies, Top and Bot into Not/And. Top and Bot need some atom;
/// they become ~(p & ~p) and p & ~p for a fixed proposition p.
[[nodiscard]] FormulaPtr desugar( const FormulaPtr& f );

[[nodiscard]] std::set<std::string> propositions_of( const FormulaPtr& f );
[[nodiscard]] std::set<std::string> agents_of( const FormulaPtr& f );

} // namespace plaus
