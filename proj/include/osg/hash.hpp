#ifndef OSG_HASH_HPP_
#define OSG_HASH_HPP_

#include "osg/bytes.hpp"

namespace osg {

// SHA-256 of the concatenation of the given views.
Bytes sha256(std::initializer_list<BytesView> parts);
inline Bytes sha256(BytesView b) { return sha256({b}); }

// Hash reduced into [0, n). Bias is below 2^-128 whenever n < 2^128;
// toy-scale moduli accept the mod bias by design.
mpz_class hash_to_range(BytesView domain_tag, BytesView data, const mpz_class& n);

}  // namespace osg

#endif
