#ifndef QRR_BUILTIN_CATALOG_HPP
#define QRR_BUILTIN_CATALOG_HPP

#include <string>

#include "catalog.hpp"
#include "qrr/catalog_data.inc"

namespace qrr {

// The catalog compiled into the binary. Parsed once.
inline const Catalog& builtin_catalog() {
  static const Catalog c = catalog_parse(std::string(detail::kBuiltinCatalogText));
  return c;
}

inline const IdentityRecord& catalog_get(const std::string& id) { return builtin_catalog().at(id); }

} // namespace qrr

#endif
