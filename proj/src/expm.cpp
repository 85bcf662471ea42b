#include "empcc/expm.hpp"

#include <cmath>

namespace empcc {

Eigen::MatrixXd expm_series(const Eigen::MatrixXd& A, int terms) {
    const int n = static_cast<int>(A.rows());
    Eigen::MatrixXd sum = Eigen::MatrixXd::Identity(n, n);
    Eigen::MatrixXd term = Eigen::MatrixXd::Identity(n, n);
    for (int k = 1; k <= terms; ++k) {
        term = (term * A) / static_cast<double>(k);
        sum += term;
    }
    return sum;
}

Eigen::MatrixXd expm(const Eigen::MatrixXd& A) {
    const int n = static_cast<int>(A.rows());
    const double theta13 = 5.371920351148152;
    const double norm = A.cwiseAbs().colwise().sum().maxCoeff();  // 1-norm
    int s = 0;
    if (norm > theta13) {
        s = static_cast<int>(std::ceil(std::log2(norm / theta13)));
    }
    const Eigen::MatrixXd As = A / std::ldexp(1.0, s);

    static const double b[] = {64764752532480000.0, 32382376266240000.0,
                               7771770303897600.0,  1187353796428800.0,
                               129060195264000.0,   10559470521600.0,
                               670442572800.0,      33522128640.0,
                               1323241920.0,        40840800.0,
                               960960.0,            16380.0,
                               182.0,               1.0};
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
    const Eigen::MatrixXd A2 = As * As;
    const Eigen::MatrixXd A4 = A2 * A2;
    const Eigen::MatrixXd A6 = A2 * A4;
    const Eigen::MatrixXd U =
        As * (A6 * (b[13] * A6 + b[11] * A4 + b[9] * A2) +
              b[7] * A6 + b[5] * A4 + b[3] * A2 + b[1] * I);
    const Eigen::MatrixXd V = A6 * (b[12] * A6 + b[10] * A4 + b[8] * A2) +
                              b[6] * A6 + b[4] * A4 + b[2] * A2 + b[0] * I;
    Eigen::MatrixXd R = (V - U).fullPivLu().solve(V + U);
    for (int k = 0; k < s; ++k) R = R * R;
    return R;
}

}  // namespace empcc
