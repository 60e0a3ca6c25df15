from .codec import (
    CodecError,
    EmptyHnpList,
    InvalidTlvValue,
    LinkAddress,
    MalformedLength,
    MihHeader,
    MihMessage,
    MissingMandatoryTlv,
    Tlv,
    Truncated,
    UnknownMessageKind,
    ValueTooLong,
    build_commit_request_ext,
    build_commit_response_ext,
    commit_status,
    decode_message,
    decode_tlv,
    encode_message,
    encode_tlv,
)
from .status import IANA_STATUS, StatusCode

__all__ = [
    "CodecError",
    "EmptyHnpList",
    "IANA_STATUS",
    "InvalidTlvValue",
    "LinkAddress",
    "MalformedLength",
    "MihHeader",
    "MihMessage",
    "MissingMandatoryTlv",
    "StatusCode",
    "Tlv",
    "Truncated",
    "UnknownMessageKind",
    "ValueTooLong",
    "build_commit_request_ext",
    "build_commit_response_ext",
    "commit_status",
    "decode_message",
    "decode_tlv",
    "encode_message",
    "encode_tlv",
]
