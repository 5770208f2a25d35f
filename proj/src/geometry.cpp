#include "respose/geometry.h"

#include <cmath>
#include <limits>

namespace respose {

Quaternion Quaternion::normalized() const {
    const double n = norm();
    if (n <= 0.0) throw std::invalid_argument("cannot normalize zero quaternion");
    return {w / n, x / n, y / n, z / n};
}

Quaternion Quaternion::canonical() const {
    if (w < 0.0) return {-w, -x, -y, -z};
    return *this;
}

Quaternion hamilton_product(const Quaternion& q1, const Quaternion& q2) {
    const Vec3 v1 = q1.vec(), v2 = q2.vec();
    const Vec3 v = q1.w * v2 + q2.w * v1 + v1.cross(v2);
    return {q1.w * q2.w - v1.dot(v2), v.x(), v.y(), v.z()};
}

Vec3 rotate_point(const Quaternion& q, const Vec3& p) {
    if (std::abs(q.norm() - 1.0) > 1e-9)
        throw std::invalid_argument("rotate_point requires a unit quaternion");
    const Quaternion pq{0.0, p.x(), p.y(), p.z()};
    const Quaternion r = hamilton_product(hamilton_product(q, pq), q.conjugate());
    return r.vec();
}

Mat3 quaternion_to_matrix(const Quaternion& qin) {
    const Quaternion q = qin.normalized();
    const double w = q.w, x = q.x, y = q.y, z = q.z;
    Mat3 R;
    R << 1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y),
        2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x),
        2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y);
    return R;
}

Quaternion matrix_to_quaternion(const Mat3& R) {
    // Shepperd's method: pick the largest diagonal combination for stability.
    const double tr = R.trace();
    Quaternion q;
    if (tr > 0.0) {
        double s = std::sqrt(tr + 1.0) * 2.0;
        q = {0.25 * s, (R(2, 1) - R(1, 2)) / s, (R(0, 2) - R(2, 0)) / s, (R(1, 0) - R(0, 1)) / s};
    } else if (R(0, 0) > R(1, 1) && R(0, 0) > R(2, 2)) {
        double s = std::sqrt(1.0 + R(0, 0) - R(1, 1) - R(2, 2)) * 2.0;
        q = {(R(2, 1) - R(1, 2)) / s, 0.25 * s, (R(0, 1) + R(1, 0)) / s, (R(0, 2) + R(2, 0)) / s};
    } else if (R(1, 1) > R(2, 2)) {
        double s = std::sqrt(1.0 + R(1, 1) - R(0, 0) - R(2, 2)) * 2.0;
        q = {(R(0, 2) - R(2, 0)) / s, (R(0, 1) + R(1, 0)) / s, 0.25 * s, (R(1, 2) + R(2, 1)) / s};
    } else {
        double s = std::sqrt(1.0 + R(2, 2) - R(0, 0) - R(1, 1)) * 2.0;
        q = {(R(1, 0) - R(0, 1)) / s, (R(0, 2) + R(2, 0)) / s, (R(1, 2) + R(2, 1)) / s, 0.25 * s};
    }
    return q.normalized().canonical();
}

Quaternion quaternion_from_axis_angle(const Vec3& axis, double angle) {
    const Vec3 u = axis.normalized();
    const double c = std::cos(angle / 2), s = std::sin(angle / 2);
    return {c, s * u.x(), s * u.y(), s * u.z()};
}

Vec3 Pose::project(const Vec3& point) const {
    const Vec3 v = rotation_matrix().transpose() * (point - translation);
    return v / v.z();
}

const CalibratedCamera* Scene::find_camera(const std::string& id) const {
    for (const auto& c : cameras)
        if (c.id == id) return &c;
    return nullptr;
}

Mat3 skew(const Vec3& t) {
    Mat3 T;
    T << 0, -t.z(), t.y(), t.z(), 0, -t.x(), -t.y(), t.x(), 0;
    return T;
}

ConstraintCoefficients build_constraint(const MatchPair& match, const CalibratedCamera& ref) {
    if (match.ref_camera != ref.id)
        throw std::invalid_argument("build_constraint: match references camera '" +
                                    match.ref_camera + "' but got '" + ref.id + "'");
    const Vec3 p = match.target_point.normalized();
    const Vec3 pp = match.ref_point.normalized();
    const Mat3 Ri = ref.pose.rotation_matrix();
    const Vec3 s = -(Ri * pp);
    const Vec3 b = -(skew(ref.pose.translation) * (Ri * pp));
    return {p, s, b};
}

Mat3 essential_from_poses(const Pose& new_pose, const Pose& ref_pose) {
    const Mat3 R = new_pose.rotation_matrix();
    const Mat3 Ri = ref_pose.rotation_matrix();
    return R.transpose() * (skew(new_pose.translation) - skew(ref_pose.translation)) * Ri;
}

double sampson_error(const Mat3& E, const Vec3& p, const Vec3& p_prime) {
    const double r = p.dot(E * p_prime);
    const Vec3 Ep = E * p_prime;
    const Vec3 Etp = E.transpose() * p;
    const double den = Ep.x() * Ep.x() + Ep.y() * Ep.y() + Etp.x() * Etp.x() + Etp.y() * Etp.y();
    if (den < 1e-300) return std::numeric_limits<double>::infinity();
    return r * r / den;
}

double residual_eq3(const Pose& pose, const ConstraintCoefficients& c) {
    return c.p.dot(pose.rotation_matrix().transpose() * (c.s.cross(pose.translation) + c.b));
}

double residual_quaternion_form(const Quaternion& q, const Vec3& t,
                                const ConstraintCoefficients& c) {
    const Quaternion pq{0.0, c.p.x(), c.p.y(), c.p.z()};
    const Quaternion w = hamilton_product(hamilton_product(q, pq), q.conjugate());
    return w.vec().dot(c.s.cross(t) + c.b);
}

double normalized_constraint_residual(const Quaternion& q, const Vec3& t,
                                      const ConstraintCoefficients& c) {
    const Quaternion qu = q.normalized();
    const double r = residual_quaternion_form(qu, t, c);
    const double scale = c.s.norm() * t.norm() + c.b.norm();
    return std::abs(r) / (scale > 1e-300 ? scale : 1e-300);
}

double rotation_angle_deg(const Mat3& Ra, const Mat3& Rb) {
    const double c = ((Ra.transpose() * Rb).trace() - 1.0) / 2.0;
    return std::acos(std::clamp(c, -1.0, 1.0)) * 180.0 / M_PI;
}

}  // namespace respose
