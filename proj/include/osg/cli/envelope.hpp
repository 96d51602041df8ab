#ifndef OSG_CLI_ENVELOPE_HPP_
#define OSG_CLI_ENVELOPE_HPP_

#include <iostream>

#include "osg/groups/backend.hpp"

namespace osg::cli {

// Every artifact the tool reads or writes travels inside this envelope:
// magic, kind tag, backend tag, version, payload.

enum class ArtifactKind : uint8_t {
    SignerPublic = 1,
    SignerPrivate = 2,
    ConfirmerPublic = 3,
    ConfirmerPrivate = 4,
    PaillierPublic = 5,
    PaillierPrivate = 6,
    ReceiverPublic = 7,
    ReceiverPrivate = 8,
    DpPublic = 9,
    DpPrivate = 10,
    Signature = 11,
    Converted = 12,
    Signcryption = 13,
    Extraction = 14,
    Transcript = 15,
    ProtocolMsg = 16,
    Coins = 17,
    DvKey = 18,
};

struct Envelope {
    ArtifactKind kind;
    BackendKind backend;
    uint8_t version = 1;
    Bytes payload;
};

Bytes encode_envelope(const Envelope& e);
std::optional<Envelope> decode_envelope(BytesView b);

// framed transport: 4-byte big-endian length then the envelope
void write_frame(std::ostream& os, const Envelope& e);
std::optional<Envelope> read_frame(std::istream& is);

void save_envelope(const std::string& path, const Envelope& e);
Envelope load_envelope(const std::string& path);  // throws DecodeError

}  // namespace osg::cli

#endif
