#ifndef QRR_ERRORS_HPP
#define QRR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qrr {

// A requested coefficient lies beyond what the inputs can certify.
struct precision_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad catalog data, bad arguments, unparsable text.
struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Division by zero, non-integral exponent and similar.
struct domain_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An internal cross-check disagreed (e.g. Casoratian vs its closed form).
struct consistency_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

} // namespace qrr

#endif
