#pragma once

#include "plaus/model.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace plaus::fixtures
{

enum class Kind
{
    ML,
    MC,
    MR,
    P,
    Pprime,
    EXP_CD_M,
    EXP_CD_Mprime,
    EXP_S_M,
    EXP_S_Mprime,
    MK,
    NK,
    DEMEY_CHAIN,
};

struct FixtureId
{
    Kind kind;
    std::size_t param = 0; ///< k for MK/NK, i for DEMEY_CHAIN
};

/// Accepts "ML", "MK?k=3", "MK(3)" and "DEMEY_CHAIN?i=4" style names.
[[nodiscard]] FixtureId parse_id( const std::string& text );
[[nodiscard]] std::string name( const FixtureId& id );
[[nodiscard]] bool parameterized( Kind kind );
/// Every fixture kind, in declaration order.
[[nodiscard]] const std::vector<Kind>& all_kinds();

/// Throws SemanticError for out-of-range parameters (k >= 0, i >= 1).
[[nodiscard]] PlausibilityModel build( const FixtureId& id );

// Shorthands for the tests.
[[nodiscard]] PlausibilityModel ml();
[[nodiscard]] PlausibilityModel mc();
[[nodiscard]] PlausibilityModel mr();
[[nodiscard]] PlausibilityModel p();
[[nodiscard]] PlausibilityModel p_prime();
[[nodiscard]] PlausibilityModel mk( std::size_t k );
[[nodiscard]] PlausibilityModel nk( std::size_t k );
[[nodiscard]] PlausibilityModel demey_chain( std::size_t i );

} // namespace plaus::fixtures
