#include "error.hpp"

namespace digmol {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::unknown_character: return "UnknownCharacter";
        case ErrorCode::empty_input: return "EmptyInput";
        case ErrorCode::unmatched_branch: return "UnmatchedBranch";
        case ErrorCode::unclosed_ring: return "UnclosedRing";
        case ErrorCode::valence_unsupported: return "ValenceUnsupported";
        case ErrorCode::malformed_smiles: return "MalformedSmiles";
        case ErrorCode::invalid_permutation: return "InvalidPermutation";
        case ErrorCode::shape_mismatch: return "ShapeMismatch";
        case ErrorCode::not_scalar: return "NotScalar";
        case ErrorCode::non_finite_value: return "NonFiniteValue";
        case ErrorCode::empty_graph: return "EmptyGraph";
        case ErrorCode::batch_too_small: return "BatchTooSmall";
        case ErrorCode::shape_drift: return "ShapeDrift";
        case ErrorCode::dataset_too_small: return "DatasetTooSmall";
        case ErrorCode::non_finite_loss: return "NonFiniteLoss";
        case ErrorCode::label_arity_mismatch: return "LabelArityMismatch";
        case ErrorCode::empty_split: return "EmptySplit";
        case ErrorCode::degenerate_labels: return "DegenerateLabels";
        case ErrorCode::length_mismatch: return "LengthMismatch";
        case ErrorCode::too_few_scaffolds: return "TooFewScaffolds";
        case ErrorCode::no_valid_molecules: return "NoValidMolecules";
        case ErrorCode::missing_column: return "MissingColumn";
        case ErrorCode::io_failure: return "IoFailure";
        case ErrorCode::bad_format: return "BadFormat";
        case ErrorCode::invalid_config: return "InvalidConfig";
    }
    return "UnknownError";
}

}  // namespace digmol
