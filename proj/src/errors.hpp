#pragma once

#include <stdexcept>
#include <string>

namespace grz {

// Error codes shared between the C++ core and the C API surface.
// Values are stable; the public header mirrors them one-to-one.
enum class Errc : int {
    ok = 0,
    // validation class (CLI exit code 1)
    config_parse = 1,
    invalid_argument = 2,
    zero_constant_term = 3,
    composition_domain = 4,
    nonzero_constant = 5,
    outside_disk = 6,
    overlapping_images = 7,
    pole_in_image = 8,
    degenerate_derivative = 9,
    degenerate_centers = 10,
    wrong_space = 11,
    space_mismatch = 12,
    resolution_too_low = 13,
    rigging_not_certified = 14,
    io_error = 15,
    // numerical class (CLI exit code 2)
    series_ill_conditioned = 16,
    quadrature_diverged = 17,
    power_iteration_stalled = 18,
    inconsistent_products = 19,
};

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::ok: return "ok";
        case Errc::config_parse: return "ConfigParse";
        case Errc::invalid_argument: return "InvalidArgument";
        case Errc::zero_constant_term: return "ZeroConstantTerm";
        case Errc::composition_domain: return "CompositionDomain";
        case Errc::nonzero_constant: return "NonzeroConstant";
        case Errc::outside_disk: return "OutsideDisk";
        case Errc::overlapping_images: return "OverlappingImages";
        case Errc::pole_in_image: return "PoleInImage";
        case Errc::degenerate_derivative: return "DegenerateDerivative";
        case Errc::degenerate_centers: return "DegenerateCenters";
        case Errc::wrong_space: return "WrongSpace";
        case Errc::space_mismatch: return "SpaceMismatch";
        case Errc::resolution_too_low: return "ResolutionTooLow";
        case Errc::rigging_not_certified: return "RiggingNotCertified";
        case Errc::io_error: return "IoError";
        case Errc::series_ill_conditioned: return "SeriesIllConditioned";
        case Errc::quadrature_diverged: return "QuadratureDiverged";
        case Errc::power_iteration_stalled: return "PowerIterationStalled";
        case Errc::inconsistent_products: return "InconsistentProducts";
    }
    return "unknown";
}

// 0 = success, 1 = validation failure, 2 = numerical failure
inline int errc_exit_code(Errc c) {
    if (c == Errc::ok) return 0;
    return static_cast<int>(c) >= static_cast<int>(Errc::series_ill_conditioned) ? 2 : 1;
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what),
          code_(code),
          message_(what) {}
    Errc code() const { return code_; }
    // message without the code-name prefix, for rewrapping with context
    const std::string& message() const { return message_; }

private:
    Errc code_;
    std::string message_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

} // namespace grz
