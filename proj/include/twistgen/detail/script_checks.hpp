#pragma once

#include "twistgen/surface.hpp"

// Seam between the catalog validator and the proof-script encodings; the
// implementations live with the scripts so the surface module does not
// depend on their headers.

namespace twistgen::detail {

// Per-step constraint entries of every builtin script applicable at the
// catalog's genus and model, excluding generation steps.
std::vector<ValidationEntry> proof_step_constraints(const CurveCatalog& cat,
                                                    const MappingClassSpec& spec);

enum class SeedTouch { GammaOnly, FOnly, Any };

// Cheap pre-filter for seed inference: runs only the class-image claims,
// optionally restricted to those touching a single seed family.
bool quick_class_image_check(const CurveCatalog& cat, const MappingClassSpec& spec,
                             SeedTouch touch);

}  // namespace twistgen::detail
