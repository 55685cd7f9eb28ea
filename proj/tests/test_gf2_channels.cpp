#include <cmath>
#include <functional>

#include "doctest.h"
#include "zxsim/error_model.hpp"
#include "zxsim/gf2.hpp"

using namespace zxsim;

namespace {
BitRow row_of(std::initializer_list<uint32_t> bits, uint32_t width) {
    BitRow r(width);
    for (uint32_t b : bits) {
        r.set(b, true);
    }
    return r;
}
}  // namespace

TEST_CASE("basis rank and expressibility") {
    // {e0^e1, e1^e2, e0^e2}: the third is the sum of the first two.
    Gf2Basis basis(3);
    CHECK(basis.insert(row_of({0, 1}, 3)).has_value());
    CHECK(basis.insert(row_of({1, 2}, 3)).has_value());
    CHECK(!basis.insert(row_of({0, 2}, 3)).has_value());
    CHECK(basis.rank() == 2);
    CHECK(basis.express(row_of({0, 2}, 3)) == std::vector<uint32_t>({0, 1}));

    Gf2Basis single(1);
    CHECK(single.insert(row_of({0}, 1)).has_value());
    CHECK(single.rank() == 1);

    Gf2Basis empty(4);
    CHECK(empty.rank() == 0);
}

TEST_CASE("basis image agrees with direct parity resolution") {
    Gf2Basis basis(6);
    basis.insert(row_of({0, 3}, 6));
    basis.insert(row_of({1}, 6));
    basis.insert(row_of({2, 4, 5}, 6));
    for (uint32_t e_bits = 0; e_bits < 64; e_bits++) {
        BitRow e(6);
        for (uint32_t i = 0; i < 6; i++) {
            e.set(i, (e_bits >> i) & 1);
        }
        BitRow f = basis.apply(e);
        CHECK(f.get(0) == (e.get(0) ^ e.get(3)));
        CHECK(f.get(1) == e.get(1));
        CHECK(f.get(2) == (e.get(2) ^ e.get(4) ^ e.get(5)));
    }
}

TEST_CASE("xor convolution merges identical channels") {
    // 0.1 then 0.2 with the same signature combine to 0.26.
    std::vector<double> a = {0.9, 0.1}, b = {0.8, 0.2};
    std::vector<double> merged = xor_convolve(a, b);
    CHECK(merged[1] == doctest::Approx(0.26).epsilon(1e-12));
    CHECK(merged[0] == doctest::Approx(0.74).epsilon(1e-12));
}

TEST_CASE("reduce_channels end to end") {
    uint32_t f_width = 2;
    std::vector<BitRow> e_images = {
        row_of({0}, f_width),  // e0 -> f0
        row_of({0}, f_width),  // e1 -> f0 (same column signature)
        row_of({}, f_width),   // e2 -> nothing (null column)
        row_of({1}, f_width),  // e3 -> f1
    };
    std::vector<ChannelGroup> channels;
    channels.push_back(ChannelGroup{{0}, {0.9, 0.1}, {{}}});
    channels.push_back(ChannelGroup{{1}, {0.8, 0.2}, {{}}});
    channels.push_back(ChannelGroup{{2}, {0.5, 0.5}, {{}}});
    channels.push_back(ChannelGroup{{3}, {0.7, 0.3}, {{}}});
    ErrorModel model = reduce_channels(channels, e_images, f_width);
    REQUIRE(model.mechanisms.size() == 2);
    CHECK(model.mechanisms[0].probability == doctest::Approx(0.26).epsilon(1e-12));
    CHECK(model.mechanisms[1].probability == doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("null-only channels disappear entirely") {
    std::vector<BitRow> e_images = {BitRow(1), BitRow(1)};
    std::vector<ChannelGroup> channels;
    channels.push_back(ChannelGroup{{0, 1}, {0.25, 0.25, 0.25, 0.25}, {{}, {}}});
    ErrorModel model = reduce_channels(channels, e_images, 1);
    CHECK(model.mechanisms.empty());
}

TEST_CASE("subset absorption embeds and convolves") {
    // 1-bit channel on {f0} absorbed into a 2-bit channel on {f0, f1}.
    uint32_t w = 2;
    std::vector<BitRow> e_images = {row_of({0}, w), row_of({0}, w), row_of({1}, w)};
    std::vector<ChannelGroup> channels;
    channels.push_back(ChannelGroup{{0}, {0.9, 0.1}, {{}}});
    // Joint, non-product table over (e1->f0, e2->f1).
    channels.push_back(ChannelGroup{{1, 2}, {0.7, 0.1, 0.15, 0.05}, {{}, {}}});
    ErrorModel model = reduce_channels(channels, e_images, w);
    REQUIRE(model.mechanisms.size() == 1);
    const ErrorMechanism &m = model.mechanisms[0];
    REQUIRE(m.joint());
    REQUIRE(m.table.size() == 4);
    // Brute-force expectation over the four outcomes.
    std::vector<double> expect(4, 0.0);
    std::vector<double> small = {0.9, 0.1};
    std::vector<double> big = {0.7, 0.1, 0.15, 0.05};
    for (int a = 0; a < 2; a++) {
        for (int b = 0; b < 4; b++) {
            expect[(a ^ (b & 1)) | (b & 2)] += small[a] * big[b];
        }
    }
    for (int i = 0; i < 4; i++) {
        CHECK(m.table[i] == doctest::Approx(expect[i]).epsilon(1e-12));
    }
}

TEST_CASE("exact product tables factorize into independent mechanisms") {
    uint32_t w = 2;
    std::vector<BitRow> e_images = {row_of({0}, w), row_of({1}, w)};
    double p = 0.1, q = 0.3;
    std::vector<double> table = {(1 - p) * (1 - q), p * (1 - q), (1 - p) * q, p * q};
    std::vector<ChannelGroup> channels;
    channels.push_back(ChannelGroup{{0, 1}, table, {{}, {}}});
    ErrorModel model = reduce_channels(channels, e_images, w);
    REQUIRE(model.mechanisms.size() == 2);
    CHECK(!model.mechanisms[0].joint());
    CHECK(model.mechanisms[0].probability == doctest::Approx(0.1));
    CHECK(model.mechanisms[1].probability == doctest::Approx(0.3));
}

TEST_CASE("probability-one sources fold into the base offset") {
    uint32_t w = 1;
    std::vector<BitRow> e_images = {row_of({0}, w)};
    std::vector<ChannelGroup> channels;
    channels.push_back(ChannelGroup{{0}, {0.0, 1.0}, {{}}});
    ErrorModel model = reduce_channels(channels, e_images, w);
    CHECK(model.mechanisms.empty());
    CHECK(model.base_offset.get(0));
}

TEST_CASE("within-channel duplicate columns fold over xor") {
    // Two bits of one channel hitting the same f column act through their
    // xor only.
    uint32_t w = 1;
    std::vector<BitRow> e_images = {row_of({0}, w), row_of({0}, w)};
    std::vector<ChannelGroup> channels;
    // (e0, e1) table: probabilities 0.5, 0.2, 0.2, 0.1 -> xor=1 has 0.4.
    channels.push_back(ChannelGroup{{0, 1}, {0.5, 0.2, 0.2, 0.1}, {{}, {}}});
    ErrorModel model = reduce_channels(channels, e_images, w);
    REQUIRE(model.mechanisms.size() == 1);
    CHECK(model.mechanisms[0].probability == doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("channel reduction preserves the induced f distribution") {
    // Random channels; compare exhaustive f distributions before/after.
    uint32_t e_width = 6, f_width = 3;
    std::vector<BitRow> e_images;
    uint32_t patterns[6] = {0b001, 0b001, 0b010, 0b110, 0b000, 0b011};
    for (uint32_t e = 0; e < e_width; e++) {
        BitRow r(f_width);
        for (uint32_t f = 0; f < f_width; f++) {
            r.set(f, (patterns[e] >> f) & 1);
        }
        e_images.push_back(r);
    }
    std::vector<ChannelGroup> channels;
    channels.push_back(ChannelGroup{{0}, {0.85, 0.15}, {{}}});
    channels.push_back(ChannelGroup{{1, 2}, {0.6, 0.15, 0.15, 0.1}, {{}, {}}});
    channels.push_back(ChannelGroup{{3, 4}, {0.65, 0.2, 0.05, 0.1}, {{}, {}}});
    channels.push_back(ChannelGroup{{5}, {0.75, 0.25}, {{}}});

    // Before: enumerate raw e patterns.
    std::vector<double> before(1 << f_width, 0.0);
    for (uint32_t bits = 0; bits < (1u << e_width); bits++) {
        double w = 1.0;
        size_t offset = 0;
        for (const auto &g : channels) {
            size_t idx = 0;
            for (size_t b = 0; b < g.param_indices.size(); b++) {
                idx |= ((bits >> g.param_indices[b]) & 1) << b;
            }
            w *= g.table[idx];
            offset += g.param_indices.size();
        }
        uint32_t f = 0;
        for (uint32_t e = 0; e < e_width; e++) {
            if ((bits >> e) & 1) {
                f ^= patterns[e];
            }
        }
        before[f] += w;
    }

    // After: enumerate mechanisms.
    ErrorModel model = reduce_channels(channels, e_images, f_width);
    std::vector<double> after(1 << f_width, 0.0);
    std::function<void(size_t, uint32_t, double)> walk = [&](size_t i, uint32_t f, double w) {
        if (i == model.mechanisms.size()) {
            after[f] += w;
            return;
        }
        const ErrorMechanism &m = model.mechanisms[i];
        if (!m.joint()) {
            uint32_t v = 0;
            for (uint32_t b : m.f_vectors[0].set_bits()) {
                v |= 1u << b;
            }
            walk(i + 1, f, w * (1 - m.probability));
            walk(i + 1, f ^ v, w * m.probability);
            return;
        }
        for (size_t o = 0; o < m.table.size(); o++) {
            uint32_t v = 0;
            for (size_t b = 0; b < m.f_vectors.size(); b++) {
                if ((o >> b) & 1) {
                    for (uint32_t fb : m.f_vectors[b].set_bits()) {
                        v ^= 1u << fb;
                    }
                }
            }
            walk(i + 1, f ^ v, w * m.table[o]);
        }
    };
    uint32_t base = 0;
    for (uint32_t b : model.base_offset.set_bits()) {
        base |= 1u << b;
    }
    walk(0, base, 1.0);
    for (size_t f = 0; f < before.size(); f++) {
        CHECK(std::abs(before[f] - after[f]) < 1e-12);
    }
}
