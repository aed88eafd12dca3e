// Copyright 2026 The cellmosaic Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cellmosaic/search/index.hpp>

#include <algorithm>
#include <cstring>
#include <map>
#include <unordered_map>

#include <cellmosaic/common/binary_io.hpp>
#include <cellmosaic/common/crc32c.hpp>
#include <cellmosaic/common/errors.hpp>

namespace cellmosaic {

namespace {

    constexpr char kMagic[4] = {'K', 'I', 'M', 'X'};

    std::vector<std::uint8_t> encode_payload(const BarcodedIndex& index) {
        ByteWriter out;
        for (std::size_t e = 0; e < index.size(); ++e) {
            const auto& p = index.entry_patch(e);
            out.put_u32(p.x);
            out.put_u32(p.y);
            out.put_u32(p.side);
            out.put_f32(p.mag);
        }
        const std::size_t nbytes = bytes_for_bits(index.bit_count());
        for (std::size_t e = 0; e < index.size(); ++e) {
            const auto words = index.entry_words(e);
            for (std::size_t b = 0; b < nbytes; ++b) {
                out.put_u8(static_cast<std::uint8_t>(words[b / 8] >> (8 * (7 - b % 8))));
            }
        }
        return out.release();
    }

}  // namespace

BarcodedIndex BarcodedIndex::build(std::vector<Barcode> barcodes, const std::vector<SlideInfo>& metadata) {
    BarcodedIndex index;
    if (barcodes.empty()) {
        return index;
    }
    index.bit_count_ = barcodes.front().bits.size();
    index.extractor_id_ = barcodes.front().extractor_id;
    index.words_per_entry_ = words_for_bits(index.bit_count_);
    for (const auto& b : barcodes) {
        if (b.bits.size() != index.bit_count_ || b.extractor_id != index.extractor_id_) {
            throw IncompatibleBarcodeError("index input mixes barcode lengths or extractors");
        }
    }
    std::unordered_map<std::string, const SlideInfo*> meta;
    for (const auto& m : metadata) {
        meta.emplace(m.slide_id, &m);
    }

    std::map<std::string, std::vector<std::size_t>> by_slide;
    for (std::size_t i = 0; i < barcodes.size(); ++i) {
        by_slide[barcodes[i].patch.slide_id].push_back(i);
    }
    for (auto& [slide_id, members] : by_slide) {
        const auto it = meta.find(slide_id);
        if (it == meta.end()) {
            throw MetadataError("no labels for indexed slide '" + slide_id + "'");
        }
        std::stable_sort(members.begin(), members.end(), [&](std::size_t a, std::size_t b) {
            const auto& pa = barcodes[a].patch;
            const auto& pb = barcodes[b].patch;
            return std::tie(pa.y, pa.x) < std::tie(pb.y, pb.x);
        });
        SlideRange range{*it->second, static_cast<std::uint32_t>(index.patches_.size()),
                         static_cast<std::uint32_t>(members.size())};
        range.info.slide_id = slide_id;
        for (const std::size_t i : members) {
            index.patches_.push_back(barcodes[i].patch);
            const auto words = barcodes[i].bits.words();
            index.words_.insert(index.words_.end(), words.begin(), words.end());
        }
        index.slides_.push_back(std::move(range));
    }
    index.finalize_entry_slides();
    return index;
}

void BarcodedIndex::finalize_entry_slides() {
    entry_slide_.assign(patches_.size(), 0);
    for (std::size_t s = 0; s < slides_.size(); ++s) {
        const auto& r = slides_[s];
        std::fill_n(entry_slide_.begin() + r.start, r.length, static_cast<std::uint32_t>(s));
    }
}

Barcode BarcodedIndex::entry_barcode(std::size_t entry) const {
    Barcode b;
    b.patch = patches_[entry];
    b.extractor_id = extractor_id_;
    b.bits = PackedBits(bit_count_);
    for (std::size_t i = 0; i < bit_count_; ++i) {
        if ((entry_words(entry)[i / kBitsPerWord] >> (kBitsPerWord - 1 - i % kBitsPerWord)) & 1U) {
            b.bits.set(i);
        }
    }
    return b;
}

const SlideRange* BarcodedIndex::find_slide(const std::string& slide_id) const {
    const auto it = std::lower_bound(slides_.begin(), slides_.end(), slide_id,
                                     [](const SlideRange& r, const std::string& id) { return r.info.slide_id < id; });
    return it != slides_.end() && it->info.slide_id == slide_id ? &*it : nullptr;
}

std::vector<Barcode> BarcodedIndex::slide_barcodes(const std::string& slide_id) const {
    std::vector<Barcode> out;
    if (const SlideRange* r = find_slide(slide_id)) {
        for (std::uint32_t e = r->start; e < r->start + r->length; ++e) {
            out.push_back(entry_barcode(e));
        }
    }
    return out;
}

void BarcodedIndex::check_compatible(const Barcode& query) const {
    if (query.extractor_id != extractor_id_) {
        throw IncompatibleBarcodeError("query extractor '" + query.extractor_id + "' does not match index extractor '" +
                                       extractor_id_ + "'");
    }
    if (query.bits.size() != bit_count_) {
        throw IncompatibleBarcodeError("query barcode has " + std::to_string(query.bits.size()) + " bits, index has " +
                                       std::to_string(bit_count_));
    }
}

std::vector<std::uint8_t> BarcodedIndex::serialize() const {
    ByteWriter out;
    for (const char c : kMagic) {
        out.put_u8(static_cast<std::uint8_t>(c));
    }
    out.put_u16(kIndexFileVersion);
    out.put_u32(static_cast<std::uint32_t>(bit_count_));
    out.put_u32(static_cast<std::uint32_t>(size()));
    out.put_string16(extractor_id_);
    out.put_u32(static_cast<std::uint32_t>(slides_.size()));
    for (const auto& r : slides_) {
        out.put_string16(r.info.slide_id);
        out.put_string16(r.info.patient_id);
        out.put_string16(r.info.tumor_type);
        out.put_string16(r.info.project_code);
        out.put_u32(r.start);
        out.put_u32(r.length);
    }
    const auto payload = encode_payload(*this);
    out.put_bytes(payload);
    out.put_u32(crc32c(payload));
    return out.release();
}

BarcodedIndex BarcodedIndex::deserialize(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 4 || std::memcmp(bytes.data(), kMagic, 4) != 0) {
        throw FormatError("not an index file (bad magic)");
    }
    ByteReader in(bytes);
    in.get_bytes(4);
    const std::uint16_t version = in.get_u16();
    if (version != kIndexFileVersion) {
        throw FormatError("unsupported index file version " + std::to_string(version));
    }
    BarcodedIndex index;
    index.bit_count_ = in.get_u32();
    const std::uint32_t entries = in.get_u32();
    index.extractor_id_ = in.get_string16();
    index.words_per_entry_ = words_for_bits(index.bit_count_);
    const std::uint32_t slide_count = in.get_u32();
    std::uint32_t expected_start = 0;
    for (std::uint32_t s = 0; s < slide_count; ++s) {
        SlideRange r;
        r.info.slide_id = in.get_string16();
        r.info.patient_id = in.get_string16();
        r.info.tumor_type = in.get_string16();
        r.info.project_code = in.get_string16();
        r.start = in.get_u32();
        r.length = in.get_u32();
        if (r.start != expected_start || r.length == 0 ||
            (!index.slides_.empty() && !(index.slides_.back().info.slide_id < r.info.slide_id))) {
            throw FormatError("index slide directory is not a sorted, contiguous partition");
        }
        expected_start += r.length;
        index.slides_.push_back(std::move(r));
    }
    if (expected_start != entries) {
        throw FormatError("index slide directory does not cover every entry");
    }
    const std::size_t nbytes = bytes_for_bits(index.bit_count_);
    const std::size_t payload_size = std::size_t{entries} * (16 + nbytes);
    const auto payload = in.get_bytes(payload_size);
    const std::uint32_t stored_crc = in.get_u32();
    if (in.remaining() != 0) {
        throw CorruptionError("trailing bytes after index checksum");
    }
    if (crc32c(payload) != stored_crc) {
        throw CorruptionError("index payload checksum mismatch");
    }

    ByteReader body(payload);
    index.patches_.resize(entries);
    for (std::uint32_t e = 0; e < entries; ++e) {
        auto& p = index.patches_[e];
        p.x = body.get_u32();
        p.y = body.get_u32();
        p.side = body.get_u32();
        p.mag = body.get_f32();
    }
    for (const auto& r : index.slides_) {
        for (std::uint32_t e = r.start; e < r.start + r.length; ++e) {
            index.patches_[e].slide_id = r.info.slide_id;
        }
    }
    index.words_.reserve(std::size_t{entries} * index.words_per_entry_);
    for (std::uint32_t e = 0; e < entries; ++e) {
        const auto bits = PackedBits::from_bytes(body.get_bytes(nbytes), index.bit_count_);
        index.words_.insert(index.words_.end(), bits.words().begin(), bits.words().end());
    }
    index.finalize_entry_slides();
    return index;
}

void BarcodedIndex::save(const std::filesystem::path& path) const { write_file_bytes(path, serialize()); }

BarcodedIndex BarcodedIndex::load(const std::filesystem::path& path) { return deserialize(read_file_bytes(path)); }

std::uint32_t BarcodedIndex::checksum() const { return crc32c(encode_payload(*this)); }

}  // namespace cellmosaic
