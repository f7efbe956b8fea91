#pragma once

#include <vector>

#include <Eigen/Core>

namespace ioncav {

enum class ChainLabel { Linear, Zigzag, Other };

const char* to_string(ChainLabel l);

// Transverse offsets below eps_z * ell are treated as on-axis when
// classifying; well above optimizer tolerance, well below physical
// zigzag amplitudes.
inline constexpr double classify_eps_z = 1e-3;

/// N ion positions in the x-y plane (natural units), sorted by y ascending.
struct IonConfiguration {
    Eigen::VectorXd x;  // along the cavity axis
    Eigen::VectorXd y;  // along the chain
    ChainLabel label = ChainLabel::Other;

    int n() const { return static_cast<int>(x.size()); }

    /// Sort ions by y and refresh the label.
    void canonicalize();

    Eigen::VectorXd packed() const;               // (x..., y...)
    static IonConfiguration unpack(const Eigen::VectorXd& z);
};

ChainLabel classify(const Eigen::VectorXd& x, double eps_z = classify_eps_z);

} // namespace ioncav
