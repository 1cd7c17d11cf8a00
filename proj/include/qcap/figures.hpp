#pragma once

#include <array>
#include <iosfwd>
#include <vector>

#include "qcap/bloch.hpp"
#include "qcap/channel.hpp"

namespace qcap {

struct ContourRequest {
    BlochVector v;                // fixed second argument of D
    std::vector<double> levels;   // bits, > 0
    Plane plane = Plane::XY;
    int resolution = 512;         // cells per side of [-1, 1]^2
};

struct Polyline {
    double level = 0.0;
    int id = 0;
    bool closed = false;
    std::vector<std::array<double, 2>> points;  // in-plane coordinates (c1, c2)
};

struct ContourResult {
    std::vector<Polyline> polylines;
    std::vector<double> empty_levels;  // levels with no curve inside the disk
};

/// Level sets of D(. || v) on a plane slice of the Bloch ball, by marching
/// squares. Points more than one cell outside the unit disk are dropped.
ContourResult contour_polylines(const ContourRequest& req);

/// CSV with header "level,polyline_id,c1,c2".
void write_contour_csv(std::ostream& os, const ContourResult& contours);

struct AngularScanRequest {
    ChannelParams channel;
    BlochVector v;
    Plane plane = Plane::XY;
    int samples = 720;
};

struct ScanSample {
    double theta = 0.0;  // polar angle of the output point about the Bloch origin, in [0, 2 pi)
    double divergence = 0.0;
    BlochVector point;
};

/// D(W || v) for W running once around the image of the great circle of
/// inputs lying in `plane`, in traversal order. Theta is monotone along the
/// curve only when the origin lies inside it.
std::vector<ScanSample> angular_scan(const AngularScanRequest& req);

/// Cyclic local maxima of the divergence column, as indices into `samples`.
std::vector<std::size_t> scan_local_maxima(const std::vector<ScanSample>& samples);

/// CSV with header "theta,D".
void write_scan_csv(std::ostream& os, const std::vector<ScanSample>& samples);

}  // namespace qcap
