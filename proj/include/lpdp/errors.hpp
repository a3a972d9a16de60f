#pragma once

#include <stdexcept>
#include <string>

namespace lpdp {

// Every failure the library reports deliberately. Anything else escaping is a bug.
enum class errc {
    // graph / METIS parsing
    malformed_header,
    asymmetric_adjacency,
    self_loop,
    duplicate_edge,
    id_out_of_range,
    negative_weight,
    non_edge,
    // generators
    unsatisfiable,
    component_too_small,
    // partitioning
    infeasible_balance,
    line_count_mismatch,
    non_contiguous_block_ids,
    balance_violated,
    boundary_too_large,
    // solvers
    too_large,
    table_blowup,
    witness_missing,
    // bench
    no_common_instances,
    empty_series,
    // argument validation
    usage,
};

inline const char* errc_name(errc c) {
    switch (c) {
    case errc::malformed_header: return "MalformedHeader";
    case errc::asymmetric_adjacency: return "AsymmetricAdjacency";
    case errc::self_loop: return "SelfLoop";
    case errc::duplicate_edge: return "DuplicateEdge";
    case errc::id_out_of_range: return "IdOutOfRange";
    case errc::negative_weight: return "NegativeWeight";
    case errc::non_edge: return "NonEdge";
    case errc::unsatisfiable: return "Unsatisfiable";
    case errc::component_too_small: return "ComponentTooSmall";
    case errc::infeasible_balance: return "InfeasibleBalance";
    case errc::line_count_mismatch: return "LineCountMismatch";
    case errc::non_contiguous_block_ids: return "NonContiguousBlockIds";
    case errc::balance_violated: return "BalanceViolated";
    case errc::boundary_too_large: return "BoundaryTooLarge";
    case errc::too_large: return "TooLarge";
    case errc::table_blowup: return "TableBlowup";
    case errc::witness_missing: return "WitnessMissing";
    case errc::no_common_instances: return "NoCommonInstances";
    case errc::empty_series: return "EmptySeries";
    case errc::usage: return "Usage";
    }
    return "Unknown";
}

class error : public std::runtime_error {
public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    errc code() const { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) {
    throw error(code, what);
}

} // namespace lpdp
