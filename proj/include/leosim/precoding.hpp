// SPDX-License-Identifier: Apache-2.0
#ifndef LEOSIM_PRECODING_HPP
#define LEOSIM_PRECODING_HPP

#include <vector>

#include "leosim/types.hpp"

namespace leosim::precoding {

/**
 * Precoding matrix with rows indexed by antenna (feed or beam port) and
 * columns by scheduled user. Raw matrices carry Normalization::Raw until one
 * of the power constraints is applied.
 */
struct PrecodingMatrix {
  CMat entries;  // N x N_sch
  Space space = Space::Feed;
  Scheme scheme = Scheme::None;
  Normalization normalization = Normalization::Raw;
};

/**
 * Codebook precoder: column k is the codebook column of user k's beam. In
 * feed space the codebook is the beamforming matrix; in beam space it is the
 * identity over beam ports. Under the one-user-per-beam scheduler with
 * identity ordering this reduces to the codebook itself.
 */
PrecodingMatrix mb_precoder(const CMat& codebook,
                            const std::vector<int>& beam_of_user,
                            Space space);

/**
 * Regularized MMSE precoder W = H^H (H H^H + diag(alpha))^-1, solved through
 * a Hermitian positive-definite factorization. The Gram matrix condition is
 * guarded at 1e12.
 */
PrecodingMatrix mmse_precoder(const CMat& h, const RVec& alpha,
                              Space space, Scheme scheme = Scheme::Mmse);

/// MMSE on the beam-center approximate channel; tagged Scheme::SsMmse.
PrecodingMatrix ss_mmse_precoder(const CMat& h_hat, const RVec& alpha,
                                 Space space);

/// Regularization factors alpha_k = 1 / expected_snr_k (linear SNRs, > 0).
RVec regularization_from_snr(const RVec& expected_snr_linear);

/**
 * Apply a power normalization over the antenna rows:
 *   SPC: sqrt(Pt) W / sqrt(tr(W W^H))
 *   PAC: sqrt(Pt/N) diag(1/||w_row||) W
 *   MPC: sqrt(Pt) W / sqrt(N max_row ||w_row||^2)
 * The raw matrix is left untouched.
 */
PrecodingMatrix normalize(const PrecodingMatrix& raw, Normalization mode,
                          double total_power_w);

} // namespace leosim::precoding

#endif // LEOSIM_PRECODING_HPP
