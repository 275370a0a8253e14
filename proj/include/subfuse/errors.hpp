#pragma once

#include <stdexcept>
#include <string>

namespace subfuse {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// core / shape validation
struct dimension_mismatch : error { using error::error; };
struct rank_deficient_x : error { using error::error; };
struct too_few_observations : error { using error::error; };
struct index_out_of_range : error { using error::error; };
struct not_strictly_ordered : error { using error::error; };

// penalty parameters
struct invalid_shape_parameter : error { using error::error; };

// solver
struct singular_capacitance : error { using error::error; };

// path / selection
struct no_fusion_achievable : error { using error::error; };
struct no_converged_entry : error { using error::error; };
struct degenerate_rss : error { using error::error; };

// inference
struct singular_design : error { using error::error; };
struct insufficient_degrees_of_freedom : error { using error::error; };
struct singular_schur_complement : error { using error::error; };
struct nonpositive_variance : error { using error::error; };
struct single_group : error { using error::error; };

// metrics
struct coincident_centroids : error { using error::error; };
struct length_mismatch : error { using error::error; };
struct empty_beta : error { using error::error; };

// io
struct parse_error : error { using error::error; };
struct empty_file : error { using error::error; };
struct missing_column : error { using error::error; };

} // namespace subfuse
