#ifndef QRR_QRR_HPP
#define QRR_QRR_HPP

#include "errors.hpp"
#include "rational.hpp"
#include "series.hpp"
#include "expr.hpp"
#include "qproducts.hpp"
#include "recurrence.hpp"
#include "determinant.hpp"
#include "catalog.hpp"
#include "verify.hpp"
#include "oracle.hpp"
#include "builtin_catalog.hpp"

#endif
