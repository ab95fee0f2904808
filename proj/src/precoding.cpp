// SPDX-License-Identifier: Apache-2.0
#include "leosim/precoding.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace leosim::precoding {

PrecodingMatrix mb_precoder(const CMat& codebook,
                            const std::vector<int>& beam_of_user,
                            Space space) {
  if (beam_of_user.empty()) throw std::invalid_argument("empty schedule");
  PrecodingMatrix w;
  w.entries.resize(codebook.rows(), static_cast<Eigen::Index>(beam_of_user.size()));
  for (size_t k = 0; k < beam_of_user.size(); ++k) {
    const int beam = beam_of_user[k];
    if (beam < 0 || beam >= codebook.cols())
      throw std::out_of_range("schedule references a nonexistent beam");
    w.entries.col(static_cast<Eigen::Index>(k)) = codebook.col(beam);
  }
  w.space = space;
  w.scheme = Scheme::Mb;
  w.normalization = Normalization::Raw;
  return w;
}

PrecodingMatrix mmse_precoder(const CMat& h, const RVec& alpha, Space space,
                              Scheme scheme) {
  const Eigen::Index n_sch = h.rows();
  if (alpha.size() != n_sch)
    throw std::invalid_argument("regularization length does not match users");
  for (Eigen::Index i = 0; i < n_sch; ++i) {
    if (!(alpha(i) > 0.0))
      throw std::invalid_argument("regularization factors must be > 0");
  }

  CMat gram = h * h.adjoint();
  gram.diagonal() += alpha.cast<cplx>();

  const Eigen::LLT<CMat> llt(gram);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("regularized Gram matrix is not positive definite");
  const double rcond = llt.rcond();
  if (rcond < 1e-12)
    throw std::runtime_error(
        "regularized Gram matrix condition exceeds 1e12 (rcond = " +
        std::to_string(rcond) + ")");

  PrecodingMatrix w;
  // W = H^H M^-1 with Hermitian M, i.e. the adjoint of the solve M X = H.
  w.entries = llt.solve(h).adjoint();
  w.space = space;
  w.scheme = scheme;
  w.normalization = Normalization::Raw;
  return w;
}

PrecodingMatrix ss_mmse_precoder(const CMat& h_hat, const RVec& alpha,
                                 Space space) {
  return mmse_precoder(h_hat, alpha, space, Scheme::SsMmse);
}

RVec regularization_from_snr(const RVec& expected_snr_linear) {
  RVec alpha(expected_snr_linear.size());
  for (Eigen::Index i = 0; i < expected_snr_linear.size(); ++i) {
    if (!(expected_snr_linear(i) > 0.0))
      throw std::invalid_argument("expected SNR must be > 0");
    alpha(i) = 1.0 / expected_snr_linear(i);
  }
  return alpha;
}

PrecodingMatrix normalize(const PrecodingMatrix& raw, Normalization mode,
                          double total_power_w) {
  if (total_power_w <= 0.0)
    throw std::invalid_argument("total power must be > 0");
  const double fro2 = raw.entries.squaredNorm();
  if (fro2 == 0.0) throw std::invalid_argument("cannot normalize all-zero W");

  const Eigen::Index n_rows = raw.entries.rows();
  PrecodingMatrix out = raw;
  out.normalization = mode;

  switch (mode) {
    case Normalization::Spc:
      out.entries *= std::sqrt(total_power_w) / std::sqrt(fro2);
      break;
    case Normalization::Pac: {
      const double row_target = std::sqrt(total_power_w / n_rows);
      for (Eigen::Index r = 0; r < n_rows; ++r) {
        const double norm = raw.entries.row(r).norm();
        if (norm == 0.0)
          throw std::invalid_argument("PAC cannot scale an all-zero antenna row");
        out.entries.row(r) *= row_target / norm;
      }
      break;
    }
    case Normalization::Mpc: {
      double max_row2 = 0.0;
      for (Eigen::Index r = 0; r < n_rows; ++r)
        max_row2 = std::max(max_row2, raw.entries.row(r).squaredNorm());
      out.entries *= std::sqrt(total_power_w) / std::sqrt(n_rows * max_row2);
      break;
    }
    case Normalization::Raw:
      break;
  }
  return out;
}

} // namespace leosim::precoding
