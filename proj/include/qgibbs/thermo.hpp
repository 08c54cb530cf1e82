#ifndef QGIBBS_THERMO_HPP
#define QGIBBS_THERMO_HPP

#include "qgibbs/types.hpp"

#include <map>
#include <string>

namespace qgibbs {

// One observable sampled over a strictly increasing axis (T or lambda), with
// provenance metadata carried into the CSV header.
struct ThermoCurve {
    VecD axis;
    VecD values;
    std::map<std::string, std::string> metadata;

    void validate() const;  // throws unless axis strictly increasing and values finite
    std::string to_csv(const std::string& axis_name, const std::string& value_name) const;
};

struct PeakEstimate {
    double location;
    double value;
    bool boundary;  // argmax fell on the grid edge; no parabolic refinement applied
};

// Argmax over (xs, ys) with 3-point parabolic refinement around the grid maximum.
PeakEstimate refine_peak(const VecD& xs, const VecD& ys);

VecD linspace_step(double lo, double hi, double step);

} // namespace qgibbs

#endif
