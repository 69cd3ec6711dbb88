#include "lindblad/errors.hpp"

#include <sstream>

namespace lindblad {

namespace {

std::string format_complex(std::complex<double> z) {
    std::ostringstream os;
    os << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
    return os.str();
}

std::string degenerate_message(const std::string& label, int a, int b,
                               std::complex<double> va, std::complex<double> vb) {
    std::ostringstream os;
    os << "degenerate block " << label << ": eigenvalues " << a << " and " << b
       << " coincide (" << format_complex(va) << " vs " << format_complex(vb) << ")";
    return os.str();
}

std::string resonance_message(int l, int m, int mu, int n, int nu,
                              std::complex<double> lm, std::complex<double> ln) {
    std::ostringstream os;
    os << "resonant eigenvalues in sector l=" << l << ": lambda(" << l << "," << m
       << ")_" << mu << " = " << format_complex(lm) << " collides with lambda(" << l
       << "," << n << ")_" << nu << " = " << format_complex(ln);
    return os.str();
}

std::string divergent_message(std::complex<double> lambda) {
    std::ostringstream os;
    os << "emission spectrum diverges: weight-carrying eigenvalue "
       << format_complex(lambda) << " has non-negative real part";
    return os.str();
}

std::string size_guard_message(int dimension, int limit) {
    std::ostringstream os;
    os << "dense oracle refused: total dimension " << dimension << " exceeds limit "
       << limit;
    return os.str();
}

} // namespace

DegenerateBlockError::DegenerateBlockError(std::string block_label_in, int index_a_in,
                                           int index_b_in, std::complex<double> value_a_in,
                                           std::complex<double> value_b_in)
    : std::runtime_error(degenerate_message(block_label_in, index_a_in, index_b_in,
                                            value_a_in, value_b_in)),
      block_label(std::move(block_label_in)),
      index_a(index_a_in),
      index_b(index_b_in),
      value_a(value_a_in),
      value_b(value_b_in) {}

ResonanceError::ResonanceError(int l_in, int m_in, int mu_in, int n_in, int nu_in,
                               std::complex<double> lambda_m_in,
                               std::complex<double> lambda_n_in)
    : std::runtime_error(resonance_message(l_in, m_in, mu_in, n_in, nu_in, lambda_m_in,
                                           lambda_n_in)),
      l(l_in),
      m(m_in),
      mu(mu_in),
      n(n_in),
      nu(nu_in),
      lambda_m(lambda_m_in),
      lambda_n(lambda_n_in) {}

DivergentSpectrumError::DivergentSpectrumError(std::complex<double> lambda_in)
    : std::runtime_error(divergent_message(lambda_in)), lambda(lambda_in) {}

SizeGuardError::SizeGuardError(int dimension_in, int limit_in)
    : std::runtime_error(size_guard_message(dimension_in, limit_in)),
      dimension(dimension_in),
      limit(limit_in) {}

} // namespace lindblad
