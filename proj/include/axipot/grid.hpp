#pragma once

#include <cstdint>
#include <vector>

namespace axipot {

/// Structured node grid in the meridional (r,z) plane.
/// Column i=0 lies exactly on the symmetry axis r=0.
struct AxiGrid {
    int nr = 0;
    int nz = 0;
    double rmax = 0.0;
    double zmin = 0.0;
    double zmax = 0.0;
    double hr = 0.0;
    double hz = 0.0;

    double r(int i) const { return i * hr; }
    double z(int j) const { return zmin + j * hz; }
    int num_nodes() const { return nr * nz; }
    // j-major storage: nodes of one z-row are contiguous in i.
    int index(int i, int j) const { return j * nr + i; }
    bool operator==(const AxiGrid&) const = default;
};

/// Validates extents and node counts, derives spacings.
AxiGrid build_grid(int nr, int nz, double rmax, double zmin, double zmax);

/// Node-indexed real values bound to a grid.
class ScalarField {
public:
    ScalarField() = default;
    explicit ScalarField(const AxiGrid& grid, double fill = 0.0)
        : grid_(grid), values_(static_cast<std::size_t>(grid.num_nodes()), fill) {}

    const AxiGrid& grid() const { return grid_; }
    double operator()(int i, int j) const { return values_[grid_.index(i, j)]; }
    double& operator()(int i, int j) { return values_[grid_.index(i, j)]; }
    const double* data() const { return values_.data(); }
    double* data() { return values_.data(); }
    int size() const { return static_cast<int>(values_.size()); }

private:
    AxiGrid grid_;
    std::vector<double> values_;
};

/// Per-node validity. A node is invalid iff it lies inside a singularity
/// exclusion zone of the case it was sampled from.
class NodeMask {
public:
    NodeMask() = default;
    explicit NodeMask(const AxiGrid& grid, bool valid = true)
        : grid_(grid), valid_(static_cast<std::size_t>(grid.num_nodes()), valid ? 1 : 0) {}

    const AxiGrid& grid() const { return grid_; }
    bool valid(int i, int j) const { return valid_[grid_.index(i, j)] != 0; }
    void set_valid(int i, int j, bool v) { valid_[grid_.index(i, j)] = v ? 1 : 0; }
    int count_valid() const;

    /// Same mask with the axis column i=0 marked invalid (radial momentum
    /// residuals are undefined there).
    NodeMask without_axis_column() const;

private:
    AxiGrid grid_;
    std::vector<std::uint8_t> valid_;
};

struct Norms {
    double linf = 0.0;
    double rms = 0.0;
};

/// Max-abs and root-mean-square over valid nodes.
/// Throws std::invalid_argument on grid mismatch or if no node is valid.
Norms field_norms(const ScalarField& f, const NodeMask& mask);

} // namespace axipot
