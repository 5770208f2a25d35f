#pragma once

#include <Eigen/Dense>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace respose {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

// Default tolerances. Exact-arithmetic scale is used for noise-free
// synthetic data, noisy scale for measured input.
inline constexpr double kExactTol = 1e-10;
inline constexpr double kNoisyTol = 1e-6;

/// Quaternion (w; x, y, z). Rotations are represented by unit quaternions;
/// q and -q map to the same rotation.
struct Quaternion {
    double w = 1.0, x = 0.0, y = 0.0, z = 0.0;

    Quaternion() = default;
    Quaternion(double w_, double x_, double y_, double z_) : w(w_), x(x_), y(y_), z(z_) {}

    double norm() const { return std::sqrt(w * w + x * x + y * y + z * z); }
    Quaternion conjugate() const { return {w, -x, -y, -z}; }
    Quaternion normalized() const;
    /// Canonical representative of {q, -q}: non-negative real part.
    Quaternion canonical() const;
    Vec3 vec() const { return {x, y, z}; }
};

Quaternion hamilton_product(const Quaternion& q1, const Quaternion& q2);

/// Rotates p by the unit quaternion q via conjugation q (0;p) q*.
/// Throws std::invalid_argument if q is not unit to within 1e-9.
Vec3 rotate_point(const Quaternion& q, const Vec3& p);

Mat3 quaternion_to_matrix(const Quaternion& q);
Quaternion matrix_to_quaternion(const Mat3& R);
Quaternion quaternion_from_axis_angle(const Vec3& axis, double angle);

/// Rigid pose: orientation plus camera center, both in the global frame.
/// Projection model: a world point P maps to image direction R^T (P - t).
struct Pose {
    Quaternion rotation;
    Vec3 translation = Vec3::Zero();

    Pose() = default;
    Pose(const Quaternion& q, const Vec3& t) : rotation(q.normalized().canonical()), translation(t) {}

    Mat3 rotation_matrix() const { return quaternion_to_matrix(rotation); }
    Vec3 project(const Vec3& point) const;  // z-normalized image coordinates
};

struct CalibratedCamera {
    std::string id;
    Pose pose;
};

/// One 2D-2D correspondence between the new image and a reference image.
/// Points are homogeneous normalized image coordinates with z = 1.
struct MatchPair {
    Vec3 target_point;       // in the new image
    std::string ref_camera;  // id of the reference camera
    Vec3 ref_point;          // in the reference image
};

/// Known coefficient triple of the bilinear epipolar constraint
/// p^T R^T (s x t + b) = 0, with s = -R_i p' and b = -[t_i]x R_i p'.
struct ConstraintCoefficients {
    Vec3 p, s, b;
};

/// A feature seen in the new image whose 3D location is known from two
/// reference views; disambiguates scale for collinear camera layouts.
struct TripleMatch {
    Vec3 point3d;
    Vec3 target_point;  // homogeneous, z = 1
};

struct Scene {
    std::vector<CalibratedCamera> cameras;
    std::vector<MatchPair> matches;
    std::optional<TripleMatch> triple_match;

    const CalibratedCamera* find_camera(const std::string& id) const;
};

Mat3 skew(const Vec3& t);

/// Builds (p, s, b) for one match. Both image points are renormalized to
/// unit Euclidean norm first; the constraint is homogeneous in them, and
/// unit norm equalizes conditioning across matches.
/// Throws std::invalid_argument on camera id mismatch.
ConstraintCoefficients build_constraint(const MatchPair& match, const CalibratedCamera& ref);

/// Essential matrix between a new camera and a reference camera, both given
/// by global poses: E = R^T ([t]x - [t_i]x) R_i.
Mat3 essential_from_poses(const Pose& new_pose, const Pose& ref_pose);

/// First-order geometric reprojection error for p^T E p' = 0. Inputs must be
/// homogeneous with third component 1. Returns +inf when the gradient
/// denominator underflows (degenerate epipolar geometry for this pair).
double sampson_error(const Mat3& E, const Vec3& p, const Vec3& p_prime);

/// Signed residual p^T R^T (s x t + b) of one constraint at a pose.
double residual_eq3(const Pose& pose, const ConstraintCoefficients& c);

/// Residual of the quaternion form vec(q p q*)^T (s x t + b); q need not be
/// unit (the form is homogeneous of degree 2 in q).
double residual_quaternion_form(const Quaternion& q, const Vec3& t, const ConstraintCoefficients& c);

/// |residual| / (|s||t| + |b|), the scale-free constraint violation.
double normalized_constraint_residual(const Quaternion& q, const Vec3& t,
                                      const ConstraintCoefficients& c);

/// Angle (degrees) between two rotations.
double rotation_angle_deg(const Mat3& Ra, const Mat3& Rb);

}  // namespace respose
