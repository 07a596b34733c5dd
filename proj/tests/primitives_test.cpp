// Copyright 2026 The aka-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <set>

#include "akalab/bytes.hpp"
#include "akalab/errors.hpp"
#include "akalab/hash.hpp"
#include "akalab/meter.hpp"
#include "akalab/rng.hpp"
#include "akalab/wire.hpp"
#include "oracle.hpp"

namespace akalab {
namespace {

TEST(Sha256, KnownVectors) {
  EXPECT_EQ(sha256({}).hex(),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  const Bytes abc{'a', 'b', 'c'};
  EXPECT_EQ(sha256(abc).hex(),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Hash, ConcatenatesCanonicalEncodings) {
  const FieldElement f = sha256(Bytes{'x'});
  const Identity id("alice");
  const Timestamp ts{0x0102030405060708};
  const FieldElement expected = oracle::H(
      {oracle::raw(f), oracle::id("alice"), oracle::ts(ts.millis), oracle::kTag11, oracle::pw("pw")});
  EXPECT_EQ(hash_of(f, id, ts, Tag2Bit::k11, Password{"pw"}), expected);
}

FieldElement constant_hash(ByteView) { return FieldElement::zero().with_bit_flipped(0); }

TEST(Hash, OverrideIsScopedAndStillMetered) {
  HashMeter meter;
  MeterInstall install(meter);
  {
    HashOverride swap(&constant_hash);
    EXPECT_EQ(hash(Bytes{1, 2}), FieldElement::zero().with_bit_flipped(0));
  }
  EXPECT_NE(hash(Bytes{1, 2}), FieldElement::zero().with_bit_flipped(0));
  EXPECT_EQ(meter.total(), 2u);
}

TEST(Hex, RoundTripAndErrors) {
  const Bytes data{0x00, 0xAB, 0xFF};
  EXPECT_EQ(to_hex(data), "00abff");
  EXPECT_EQ(from_hex("00ABff"), data);
  EXPECT_THROW(from_hex("abc"), EncodingError);
  EXPECT_THROW(from_hex("zz"), EncodingError);
}

TEST(FieldElement, XorAndBitFlip) {
  Rng rng(7);
  const FieldElement a = random_field(rng);
  const FieldElement b = random_field(rng);
  EXPECT_EQ((a ^ b) ^ b, a);
  EXPECT_TRUE((a ^ a).is_zero());
  EXPECT_EQ(oracle::X(a, b), a ^ b);

  const FieldElement z = FieldElement::zero();
  EXPECT_EQ(z.with_bit_flipped(0).bytes()[0], 0x80);
  EXPECT_EQ(z.with_bit_flipped(255).bytes()[31], 0x01);
  EXPECT_THROW(FieldElement::from_bytes(Bytes(31)), EncodingError);
}

TEST(Identity, AcceptsOneToThirtyTwoBytes) {
  EXPECT_NO_THROW(Identity("a"));
  EXPECT_NO_THROW(Identity(std::string(32, 'z')));
  EXPECT_NO_THROW(Identity("h\xC3\xA9llo"));
  EXPECT_EQ(Identity("bob").block(), FieldElement::from_bytes(oracle::id("bob")));
}

TEST(Identity, RejectsBadEncodings) {
  EXPECT_THROW(Identity(""), EncodingError);
  EXPECT_THROW(Identity(std::string(33, 'z')), EncodingError);
  EXPECT_THROW(Identity(std::string("ab\0", 3)), EncodingError);
  EXPECT_THROW(Identity("\xC3"), EncodingError);          // truncated sequence
  EXPECT_THROW(Identity("\xC0\x80"), EncodingError);      // overlong
  EXPECT_THROW(Identity("\xED\xA0\x80"), EncodingError);  // surrogate
}

TEST(Identity, FromBlockIsLenient) {
  const Identity id("server-7");
  EXPECT_EQ(Identity::from_block(id.block()), id);
  EXPECT_EQ(Identity::from_block(id.block()).text(), "server-7");
  EXPECT_THROW(Identity::from_block(FieldElement::zero()), EncodingError);
  // Garbage survives as bytes.
  EXPECT_NO_THROW(Identity::from_block(id.block().with_bit_flipped(1)));
}

TEST(Timestamp, BigEndian) {
  const Timestamp ts{1'700'000'000'123};
  const auto enc = ts.encode();
  EXPECT_EQ(Bytes(enc.begin(), enc.end()), oracle::ts(ts.millis));
  EXPECT_EQ(Timestamp::decode(enc), ts);
  EXPECT_THROW(Timestamp::decode(Bytes(7)), EncodingError);
}

TEST(Meter, AttributesByRoleAndPhase) {
  HashMeter meter;
  {
    MeterInstall install(meter);
    MeterScope user(Role::User, Phase::Login);
    hash(Bytes{});
    {
      PhaseScope ake(Phase::Ake);
      hash(Bytes{});
      hash(Bytes{});
    }
    MeterScope server(Role::Server, Phase::Ake);
    hash(Bytes{});
  }
  hash(Bytes{});  // no meter installed
  EXPECT_EQ(meter.count(Role::User, Phase::Login), 1u);
  EXPECT_EQ(meter.count(Role::User, Phase::Ake), 2u);
  EXPECT_EQ(meter.count(Role::Server, Phase::Ake), 1u);
  EXPECT_EQ(meter.total(Role::User), 3u);
  EXPECT_EQ(meter.total(), 4u);
}

TEST(Rng, SeededStreamsAreReproducibleAndDistinct) {
  Rng a(42, 1), b(42, 1), c(42, 2);
  const auto x = random_field(a);
  EXPECT_EQ(x, random_field(b));
  EXPECT_NE(x, random_field(c));
  // The engine is standard-specified.
  Rng plain(5489);
  EXPECT_EQ(plain.next_u64(), 14514284786278117030ull);
}

TEST(Wire, RoundTripAndStrictness) {
  Rng rng(1);
  const FieldElement f = random_field(rng);
  Bytes msg = wire::Writer().put(wire::Tag::F, f).put(wire::Tag::Ts, Timestamp{9}).take();
  ASSERT_EQ(msg.size(), 3u + 32u + 3u + 8u);
  EXPECT_EQ(msg[0], 0x01);
  EXPECT_EQ(msg[1], 0x00);
  EXPECT_EQ(msg[2], 0x20);

  wire::Reader r(msg);
  EXPECT_EQ(r.field(wire::Tag::F), f);
  EXPECT_EQ(r.timestamp(wire::Tag::Ts), Timestamp{9});
  EXPECT_NO_THROW(r.finish());

  wire::Reader wrong(msg);
  EXPECT_THROW(wrong.field(wire::Tag::G), FormatError);

  Bytes trailing = msg;
  trailing.push_back(0);
  wire::Reader t(trailing);
  t.field(wire::Tag::F);
  t.timestamp(wire::Tag::Ts);
  try {
    t.finish();
    FAIL() << "trailing byte accepted";
  } catch (const FormatError& e) {
    EXPECT_EQ(e.position(), msg.size());
  }

  Bytes truncated(msg.begin(), msg.end() - 1);
  EXPECT_THROW(wire::parse(truncated), FormatError);
  EXPECT_EQ(wire::parse(msg).size(), 2u);
}

}  // namespace
}  // namespace akalab
