#ifndef DIGMOL_ERROR_HPP
#define DIGMOL_ERROR_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace digmol {

enum class ErrorCode {
    // smiles
    unknown_character,
    empty_input,
    unmatched_branch,
    unclosed_ring,
    valence_unsupported,
    malformed_smiles,
    // graphs and tensors
    invalid_permutation,
    shape_mismatch,
    not_scalar,
    non_finite_value,
    empty_graph,
    // losses and training
    batch_too_small,
    shape_drift,
    dataset_too_small,
    non_finite_loss,
    label_arity_mismatch,
    empty_split,
    // metrics and splits
    degenerate_labels,
    length_mismatch,
    too_few_scaffolds,
    // io
    no_valid_molecules,
    missing_column,
    io_failure,
    bad_format,
    invalid_config,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message, std::int64_t detail = -1)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
          code_(code),
          detail_(detail) {}

    ErrorCode code() const { return code_; }

    // Context-dependent position value: byte offset for UnknownCharacter,
    // ring digit for UnclosedRing, row number for dataset failures.
    std::int64_t detail() const { return detail_; }

private:
    ErrorCode code_;
    std::int64_t detail_;
};

}  // namespace digmol

#endif
