#include "osg/hash.hpp"

#include <openssl/evp.h>

namespace osg {

Bytes sha256(std::initializer_list<BytesView> parts) {
    Bytes out(32);
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
    for (auto& p : parts) EVP_DigestUpdate(ctx, p.data(), p.size());
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx, out.data(), &len);
    EVP_MD_CTX_free(ctx);
    return out;
}

mpz_class hash_to_range(BytesView domain_tag, BytesView data, const mpz_class& n) {
    // two blocks of SHA-256 give 512 bits of material
    Bytes tag(domain_tag.begin(), domain_tag.end());
    Bytes one = tag, two = tag;
    one.push_back(0x01);
    two.push_back(0x02);
    Bytes d1 = sha256({BytesView(one), data});
    Bytes d2 = sha256({BytesView(two), data});
    d1.insert(d1.end(), d2.begin(), d2.end());
    mpz_class v = mpz_from_bytes(d1);
    return v % n;
}

}  // namespace osg
