#include "hexazero/eunn.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace hexazero::eunn {

namespace {

constexpr std::string_view kMagic = "EUNN0001";

char piece_char(Piece p) {
    constexpr std::string_view letters = "pnbrqk";
    const char c = letters[static_cast<std::size_t>(p.kind)];
    return p.color == Color::White ? static_cast<char>(std::toupper(c)) : c;
}

std::optional<Piece> piece_from_char(char c) {
    constexpr std::string_view letters = "pnbrqk";
    const auto pos = letters.find(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (pos == std::string_view::npos) return std::nullopt;
    return Piece{static_cast<PieceKind>(pos), std::isupper(static_cast<unsigned char>(c)) ? Color::White : Color::Black};
}

bool on_board(int sq) { return sq >= 0 && sq < kBoardSquares; }

int feature_kind(Piece piece, Color perspective) {
    return static_cast<int>(piece.kind) + (piece.color == perspective ? 0 : 5);
}

FeatureIndex feature_for(int king_sq, Piece piece, int sq, Color perspective) {
    return feature_index(perspective_transform(king_sq, perspective), feature_kind(piece, perspective),
                         perspective_transform(sq, perspective));
}

std::int16_t narrow16(std::int32_t v) {
    if (v < std::numeric_limits<std::int16_t>::min() || v > std::numeric_limits<std::int16_t>::max())
        throw AccumulatorOverflow("accumulator left the 16-bit range; weights are mis-scaled");
    return static_cast<std::int16_t>(v);
}

std::vector<std::int32_t> dense_layer(std::span<const std::uint8_t> in, std::span<const std::int8_t> weights,
                                      std::span<const std::int32_t> biases) {
    std::vector<std::int32_t> out(biases.size());
    for (std::size_t j = 0; j < biases.size(); ++j)
        out[j] = madd_pairs(in, weights.subspan(j * in.size(), in.size())) + biases[j];
    return out;
}

// Little-endian scalar I/O.
template <typename T>
void put(std::ostream& os, T v) {
    using U = std::make_unsigned_t<T>;
    auto u = static_cast<U>(v);
    for (std::size_t i = 0; i < sizeof(T); ++i) {
        os.put(static_cast<char>(u & 0xFF));
        if constexpr (sizeof(T) > 1) u = static_cast<U>(u >> 8);
    }
}

template <typename T>
T get(std::istream& is) {
    using U = std::make_unsigned_t<T>;
    U u = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) {
        const int c = is.get();
        if (c == std::char_traits<char>::eof()) throw std::runtime_error("weight file truncated");
        u = static_cast<U>(u | (static_cast<U>(static_cast<unsigned char>(c)) << (8 * i)));
    }
    return static_cast<T>(u);
}

template <typename T>
void put_all(std::ostream& os, const std::vector<T>& v) {
    for (T x : v) put(os, x);
}

template <typename T>
std::vector<T> get_all(std::istream& is, std::size_t n) {
    std::vector<T> v(n);
    for (auto& x : v) x = get<T>(is);
    return v;
}

void add_pawn_moves(const ChessPosition& p, int sq, Color us, std::vector<ChessMove>& out) {
    const int dir = us == Color::White ? 8 : -8;
    const int last_rank = us == Color::White ? 7 : 0;
    auto push = [&](int to) {
        if (rank_of(to) == last_rank) {
            for (auto k : {PieceKind::Knight, PieceKind::Bishop, PieceKind::Rook, PieceKind::Queen})
                out.push_back({sq, to, k});
        } else {
            out.push_back({sq, to, std::nullopt});
        }
    };
    const int fwd = sq + dir;
    if (on_board(fwd) && !p.at(fwd)) push(fwd);
    for (int df : {-1, 1}) {
        const int f = file_of(sq) + df;
        if (f < 0 || f > 7 || !on_board(fwd)) continue;
        const int to = fwd + df;
        const auto& target = p.at(to);
        if (target && target->color != us && target->kind != PieceKind::King) push(to);
    }
}

void add_step_moves(const ChessPosition& p, int sq, Color us, std::span<const std::pair<int, int>> steps, bool slide,
                    std::vector<ChessMove>& out) {
    for (auto [dr, df] : steps) {
        int r = rank_of(sq) + dr;
        int f = file_of(sq) + df;
        while (r >= 0 && r < 8 && f >= 0 && f < 8) {
            const int to = r * 8 + f;
            const auto& target = p.at(to);
            if (target) {
                if (target->color != us && target->kind != PieceKind::King) out.push_back({sq, to, std::nullopt});
                break;
            }
            out.push_back({sq, to, std::nullopt});
            if (!slide) break;
            r += dr;
            f += df;
        }
    }
}

}  // namespace

// ------------------------------------------------------------------ positions

int ChessPosition::king_square(Color c) const {
    for (int sq = 0; sq < kBoardSquares; ++sq)
        if (squares_[static_cast<std::size_t>(sq)] == Piece{PieceKind::King, c}) return sq;
    throw InvalidPosition(std::string(c == Color::White ? "white" : "black") + " king is missing");
}

int ChessPosition::piece_count() const {
    return static_cast<int>(std::count_if(squares_.begin(), squares_.end(), [](const auto& s) { return s.has_value(); }));
}

void ChessPosition::validate() const {
    int kings[2] = {0, 0};
    for (int sq = 0; sq < kBoardSquares; ++sq) {
        const auto& s = squares_[static_cast<std::size_t>(sq)];
        if (!s) continue;
        if (s->kind == PieceKind::King) ++kings[color_index(s->color)];
        if (s->kind == PieceKind::Pawn && (rank_of(sq) == 0 || rank_of(sq) == 7))
            throw InvalidPosition("pawn on the first or last rank");
    }
    if (kings[0] != 1 || kings[1] != 1) throw InvalidPosition("each side needs exactly one king");
}

ChessPosition parse_fen(std::string_view fen) {
    std::istringstream in{std::string(fen)};
    std::string placement, active;
    if (!(in >> placement)) throw InvalidPosition("empty FEN");
    ChessPosition p;
    int rank = 7, file = 0;
    for (char c : placement) {
        if (c == '/') {
            if (file != 8) throw InvalidPosition("FEN rank does not have 8 files");
            --rank;
            file = 0;
            if (rank < 0) throw InvalidPosition("FEN has more than 8 ranks");
        } else if (c >= '1' && c <= '8') {
            file += c - '0';
        } else if (auto piece = piece_from_char(c)) {
            if (file > 7) throw InvalidPosition("FEN rank overflows");
            p.set(rank * 8 + file, piece);
            ++file;
        } else {
            throw InvalidPosition(std::string("bad FEN character '") + c + "'");
        }
        if (file > 8) throw InvalidPosition("FEN rank overflows");
    }
    if (rank != 0 || file != 8) throw InvalidPosition("FEN placement must describe 8 full ranks");
    if (in >> active) {
        if (active == "w") p.set_side_to_move(Color::White);
        else if (active == "b") p.set_side_to_move(Color::Black);
        else throw InvalidPosition("FEN active color must be w or b");
    }
    p.validate();
    return p;
}

std::string to_fen(const ChessPosition& p) {
    std::string out;
    for (int rank = 7; rank >= 0; --rank) {
        int empty = 0;
        for (int file = 0; file < 8; ++file) {
            const auto& s = p.at(rank * 8 + file);
            if (!s) {
                ++empty;
                continue;
            }
            if (empty) out += static_cast<char>('0' + empty);
            empty = 0;
            out += piece_char(*s);
        }
        if (empty) out += static_cast<char>('0' + empty);
        if (rank) out += '/';
    }
    out += p.side_to_move() == Color::White ? " w - - 0 1" : " b - - 0 1";
    return out;
}

ChessPosition mirror(const ChessPosition& p) {
    ChessPosition m;
    for (int sq = 0; sq < kBoardSquares; ++sq)
        if (const auto& s = p.at(sq)) m.set(sq ^ 56, Piece{s->kind, opposite(s->color)});
    m.set_side_to_move(opposite(p.side_to_move()));
    return m;
}

ChessPosition random_position(Rng& rng) {
    ChessPosition p;
    std::vector<int> empty;
    for (int sq = 0; sq < kBoardSquares; ++sq) empty.push_back(sq);
    auto take = [&](std::size_t i) {
        const int sq = empty[i];
        empty.erase(empty.begin() + static_cast<std::ptrdiff_t>(i));
        return sq;
    };
    p.set(take(uniform_index(rng, empty.size())), Piece{PieceKind::King, Color::White});
    p.set(take(uniform_index(rng, empty.size())), Piece{PieceKind::King, Color::Black});
    const std::size_t extra = uniform_index(rng, 15);
    for (std::size_t n = 0; n < extra; ++n) {
        const auto kind = static_cast<PieceKind>(uniform_index(rng, 5));
        const Color color = uniform_index(rng, 2) == 0 ? Color::White : Color::Black;
        std::vector<std::size_t> allowed;
        for (std::size_t i = 0; i < empty.size(); ++i)
            if (kind != PieceKind::Pawn || (rank_of(empty[i]) != 0 && rank_of(empty[i]) != 7)) allowed.push_back(i);
        p.set(take(allowed[uniform_index(rng, allowed.size())]), Piece{kind, color});
    }
    p.set_side_to_move(uniform_index(rng, 2) == 0 ? Color::White : Color::Black);
    return p;
}

// ------------------------------------------------------------------ features

FeatureIndex feature_index(int king_sq, int kind, int piece_sq) {
    if (!on_board(king_sq) || !on_board(piece_sq) || kind < 0 || kind >= kFeatureKinds)
        throw OutOfRange("feature_index: argument out of range");
    return FeatureIndex{static_cast<std::uint16_t>(king_sq * 640 + kind * 64 + piece_sq)};
}

int perspective_transform(int sq, Color perspective) { return perspective == Color::White ? sq : sq ^ 56; }

std::vector<FeatureIndex> active_features(const ChessPosition& p, Color perspective) {
    const int king = p.king_square(perspective);
    std::vector<FeatureIndex> out;
    for (int sq = 0; sq < kBoardSquares; ++sq) {
        const auto& s = p.at(sq);
        if (s && s->kind != PieceKind::King) out.push_back(feature_for(king, *s, sq, perspective));
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ------------------------------------------------------------------ moves

namespace {

Piece validated_mover(const ChessPosition& p, const ChessMove& m) {
    if (!on_board(m.from) || !on_board(m.to) || m.from == m.to) throw MalformedMove("move squares out of range");
    const auto& mover = p.at(m.from);
    if (!mover || mover->color != p.side_to_move()) throw MalformedMove("from-square holds no side-to-move piece");
    const auto& target = p.at(m.to);
    if (target && (target->color == mover->color || target->kind == PieceKind::King))
        throw MalformedMove("cannot capture an own piece or a king");
    const bool reaches_last = mover->kind == PieceKind::Pawn && rank_of(m.to) == (mover->color == Color::White ? 7 : 0);
    if (reaches_last != m.promotion.has_value()) throw MalformedMove("promotion piece must accompany a last-rank pawn move");
    if (m.promotion && (*m.promotion == PieceKind::Pawn || *m.promotion == PieceKind::King))
        throw MalformedMove("cannot promote to a pawn or a king");
    return *mover;
}

}  // namespace

FeatureDelta move_delta(const ChessPosition& p, const ChessMove& m) {
    const Piece mover = validated_mover(p, m);
    const Piece placed{m.promotion.value_or(mover.kind), mover.color};
    const auto& captured = p.at(m.to);
    FeatureDelta d;
    for (Color persp : {Color::White, Color::Black}) {
        HalfDelta& h = d.half(persp);
        if (mover.kind == PieceKind::King && mover.color == persp) {
            h.needs_refresh = true;
            continue;
        }
        const int king = p.king_square(persp);
        if (mover.kind != PieceKind::King) {
            h.removed.push_back(feature_for(king, mover, m.from, persp));
            h.added.push_back(feature_for(king, placed, m.to, persp));
        }
        if (captured) h.removed.push_back(feature_for(king, *captured, m.to, persp));
    }
    return d;
}

ChessPosition make_move(const ChessPosition& p, const ChessMove& m) {
    const Piece mover = validated_mover(p, m);
    ChessPosition next = p;
    next.set(m.from, std::nullopt);
    next.set(m.to, Piece{m.promotion.value_or(mover.kind), mover.color});
    next.set_side_to_move(opposite(p.side_to_move()));
    return next;
}

ChessPosition make_null_move(const ChessPosition& p) {
    ChessPosition next = p;
    next.set_side_to_move(opposite(p.side_to_move()));
    return next;
}

std::vector<ChessMove> pseudo_legal_moves(const ChessPosition& p) {
    static constexpr std::pair<int, int> kKnight[] = {{1, 2}, {2, 1}, {2, -1}, {1, -2}, {-1, -2}, {-2, -1}, {-2, 1}, {-1, 2}};
    static constexpr std::pair<int, int> kDiag[] = {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
    static constexpr std::pair<int, int> kOrtho[] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    static constexpr std::pair<int, int> kAll[] = {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}, {1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    const Color us = p.side_to_move();
    std::vector<ChessMove> out;
    for (int sq = 0; sq < kBoardSquares; ++sq) {
        const auto& s = p.at(sq);
        if (!s || s->color != us) continue;
        switch (s->kind) {
            case PieceKind::Pawn: add_pawn_moves(p, sq, us, out); break;
            case PieceKind::Knight: add_step_moves(p, sq, us, kKnight, false, out); break;
            case PieceKind::Bishop: add_step_moves(p, sq, us, kDiag, true, out); break;
            case PieceKind::Rook: add_step_moves(p, sq, us, kOrtho, true, out); break;
            case PieceKind::Queen: add_step_moves(p, sq, us, kAll, true, out); break;
            case PieceKind::King: add_step_moves(p, sq, us, kAll, false, out); break;
        }
    }
    return out;
}

// ------------------------------------------------------------------ network

QuantEvalNet QuantEvalNet::zeros(int half_width, int l2, int l3) {
    if (half_width <= 0 || l2 <= 0 || l3 <= 0) throw std::invalid_argument("layer widths must be positive");
    QuantEvalNet n;
    n.half_width = half_width;
    n.l2_width = l2;
    n.l3_width = l3;
    n.input_weights.assign(static_cast<std::size_t>(kFeatures) * half_width, 0);
    n.input_biases.assign(static_cast<std::size_t>(half_width), 0);
    n.l2_weights.assign(static_cast<std::size_t>(l2) * 2 * half_width, 0);
    n.l2_biases.assign(static_cast<std::size_t>(l2), 0);
    n.l3_weights.assign(static_cast<std::size_t>(l3) * l2, 0);
    n.l3_biases.assign(static_cast<std::size_t>(l3), 0);
    n.output_weights.assign(static_cast<std::size_t>(l3), 0);
    return n;
}

QuantEvalNet QuantEvalNet::random(Rng& rng, int half_width, int input_range) {
    QuantEvalNet n = zeros(half_width);
    std::uniform_int_distribution<int> in(-input_range, input_range);
    std::uniform_int_distribution<int> i8(-128, 127);
    std::uniform_int_distribution<int> bias(-4096, 4096);
    for (auto& w : n.input_weights) w = static_cast<std::int16_t>(in(rng));
    for (auto& b : n.input_biases) b = static_cast<std::int16_t>(in(rng) + 64);
    for (auto& w : n.l2_weights) w = static_cast<std::int8_t>(i8(rng));
    for (auto& b : n.l2_biases) b = bias(rng);
    for (auto& w : n.l3_weights) w = static_cast<std::int8_t>(i8(rng));
    for (auto& b : n.l3_biases) b = bias(rng);
    for (auto& w : n.output_weights) w = static_cast<std::int8_t>(i8(rng));
    n.output_bias = bias(rng);
    return n;
}

void QuantEvalNet::check_shapes() const {
    const auto hw = static_cast<std::size_t>(half_width);
    if (half_width <= 0 || l2_width <= 0 || l3_width <= 0 || input_weights.size() != kFeatures * hw ||
        input_biases.size() != hw || l2_weights.size() != static_cast<std::size_t>(l2_width) * 2 * hw ||
        l2_biases.size() != static_cast<std::size_t>(l2_width) ||
        l3_weights.size() != static_cast<std::size_t>(l3_width * l2_width) ||
        l3_biases.size() != static_cast<std::size_t>(l3_width) ||
        output_weights.size() != static_cast<std::size_t>(l3_width))
        throw std::invalid_argument("QuantEvalNet: parameter arrays do not match the declared widths");
    if (activation_shift > 30) throw std::invalid_argument("QuantEvalNet: activation shift out of range");
    if (output_scale <= 0) throw std::invalid_argument("QuantEvalNet: output scale must be positive");
}

void refresh_half(Accumulator& acc, const ChessPosition& p, Color perspective, const QuantEvalNet& net) {
    const auto hw = static_cast<std::size_t>(net.half_width);
    std::vector<std::int32_t> sum(net.input_biases.begin(), net.input_biases.end());
    for (FeatureIndex f : active_features(p, perspective)) {
        const auto col = net.column(f);
        for (std::size_t i = 0; i < hw; ++i) sum[i] += col[i];
    }
    auto& half = acc.halves[static_cast<std::size_t>(color_index(perspective))];
    half.resize(hw);
    for (std::size_t i = 0; i < hw; ++i) half[i] = narrow16(sum[i]);
    acc.dirty[static_cast<std::size_t>(color_index(perspective))] = false;
}

void refresh(Accumulator& acc, const ChessPosition& p, const QuantEvalNet& net) {
    refresh_half(acc, p, Color::White, net);
    refresh_half(acc, p, Color::Black, net);
}

void apply_delta(Accumulator& acc, const FeatureDelta& delta, const QuantEvalNet& net) {
    const auto hw = static_cast<std::size_t>(net.half_width);
    for (Color persp : {Color::White, Color::Black}) {
        const auto ci = static_cast<std::size_t>(color_index(persp));
        const HalfDelta& h = delta.half(persp);
        if (h.needs_refresh) {
            acc.dirty[ci] = true;
            continue;
        }
        if (h.removed.empty() && h.added.empty()) continue;
        if (acc.dirty[ci] || acc.halves[ci].size() != hw)
            throw DirtyAccumulator("apply_delta on a dirty accumulator half");
        std::vector<std::int32_t> sum(acc.halves[ci].begin(), acc.halves[ci].end());
        for (FeatureIndex f : h.removed) {
            const auto col = net.column(f);
            for (std::size_t i = 0; i < hw; ++i) sum[i] -= col[i];
        }
        for (FeatureIndex f : h.added) {
            const auto col = net.column(f);
            for (std::size_t i = 0; i < hw; ++i) sum[i] += col[i];
        }
        for (std::size_t i = 0; i < hw; ++i) acc.halves[ci][i] = narrow16(sum[i]);
    }
}

void update(Accumulator& acc, const ChessPosition& after, const FeatureDelta& delta, const QuantEvalNet& net) {
    apply_delta(acc, delta, net);
    for (Color persp : {Color::White, Color::Black})
        if (delta.half(persp).needs_refresh) refresh_half(acc, after, persp, net);
}

std::uint8_t clipped_relu_q(std::int32_t x, int shift) {
    return static_cast<std::uint8_t>(std::clamp(x >> shift, 0, kActivationMax));
}

std::vector<std::uint8_t> clipped_relu_q(std::span<const std::int32_t> x, int shift) {
    std::vector<std::uint8_t> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = clipped_relu_q(x[i], shift);
    return out;
}

std::int32_t madd_pairs(std::span<const std::uint8_t> a, std::span<const std::int8_t> b) {
    if (a.size() != b.size()) throw std::invalid_argument("madd_pairs: length mismatch");
    std::int32_t acc = 0;
    std::size_t i = 0;
    for (; i + 1 < a.size(); i += 2)
        acc += static_cast<std::int32_t>(a[i]) * b[i] + static_cast<std::int32_t>(a[i + 1]) * b[i + 1];
    if (i < a.size()) acc += static_cast<std::int32_t>(a[i]) * b[i];
    return acc;
}

int evaluate(const ChessPosition& p, const Accumulator& acc, const QuantEvalNet& net) {
    const Color stm = p.side_to_move();
    if (acc.is_dirty(Color::White) || acc.is_dirty(Color::Black)) throw DirtyAccumulator("evaluate on a dirty accumulator");
    const auto hw = static_cast<std::size_t>(net.half_width);
    std::vector<std::uint8_t> input(2 * hw);
    const auto own = acc.half(stm);
    const auto opp = acc.half(opposite(stm));
    if (own.size() != hw || opp.size() != hw) throw DirtyAccumulator("accumulator width does not match the network");
    // Accumulator entries are already in activation units; the shift applies to dense layers only.
    for (std::size_t i = 0; i < hw; ++i) {
        input[i] = clipped_relu_q(own[i], 0);
        input[hw + i] = clipped_relu_q(opp[i], 0);
    }
    const int s = net.activation_shift;
    const auto h2 = clipped_relu_q(dense_layer(input, net.l2_weights, net.l2_biases), s);
    const auto h3 = clipped_relu_q(dense_layer(h2, net.l3_weights, net.l3_biases), s);
    const std::int32_t raw = madd_pairs(h3, net.output_weights) + net.output_bias;
    return raw / net.output_scale;
}

int evaluate(const ChessPosition& p, const QuantEvalNet& net) {
    Accumulator acc;
    refresh(acc, p, net);
    return evaluate(p, acc, net);
}

void write_weights(std::ostream& os, const QuantEvalNet& net) {
    net.check_shapes();
    os.write(kMagic.data(), static_cast<std::streamsize>(kMagic.size()));
    put<std::int32_t>(os, net.half_width);
    put<std::int32_t>(os, net.l2_width);
    put<std::int32_t>(os, net.l3_width);
    put_all(os, net.input_weights);
    put_all(os, net.input_biases);
    put_all(os, net.l2_weights);
    put_all(os, net.l2_biases);
    put_all(os, net.l3_weights);
    put_all(os, net.l3_biases);
    put_all(os, net.output_weights);
    put(os, net.output_bias);
    put(os, net.activation_shift);
    put(os, net.output_scale);
    if (!os) throw std::runtime_error("failed writing weight file");
}

QuantEvalNet read_weights(std::istream& is) {
    char magic[8] = {};
    is.read(magic, sizeof magic);
    if (is.gcount() != static_cast<std::streamsize>(sizeof magic) || std::string_view(magic, sizeof magic) != kMagic)
        throw std::runtime_error("not an EUNN0001 weight file");
    const int hw = get<std::int32_t>(is);
    const int l2 = get<std::int32_t>(is);
    const int l3 = get<std::int32_t>(is);
    if (hw <= 0 || l2 <= 0 || l3 <= 0 || hw > 4096 || l2 > 4096 || l3 > 4096)
        throw std::runtime_error("weight file has implausible layer widths");
    QuantEvalNet n;
    n.half_width = hw;
    n.l2_width = l2;
    n.l3_width = l3;
    const auto uhw = static_cast<std::size_t>(hw);
    n.input_weights = get_all<std::int16_t>(is, kFeatures * uhw);
    n.input_biases = get_all<std::int16_t>(is, uhw);
    n.l2_weights = get_all<std::int8_t>(is, static_cast<std::size_t>(l2) * 2 * uhw);
    n.l2_biases = get_all<std::int32_t>(is, static_cast<std::size_t>(l2));
    n.l3_weights = get_all<std::int8_t>(is, static_cast<std::size_t>(l3 * l2));
    n.l3_biases = get_all<std::int32_t>(is, static_cast<std::size_t>(l3));
    n.output_weights = get_all<std::int8_t>(is, static_cast<std::size_t>(l3));
    n.output_bias = get<std::int32_t>(is);
    n.activation_shift = get<std::uint8_t>(is);
    n.output_scale = get<std::int32_t>(is);
    if (is.peek() != std::char_traits<char>::eof()) throw std::runtime_error("trailing bytes after weight file");
    n.check_shapes();
    return n;
}

void save_weights(const QuantEvalNet& net, const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    write_weights(os, net);
}

QuantEvalNet load_weights(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open weight file '" + path.string() + "'");
    return read_weights(is);
}

// ------------------------------------------------------------------ material

const std::array<std::array<int, 8>, 8> kPieceSquareTable{{
    {-50, -40, -30, -30, -30, -30, -40, -50},
    {-40, -20, 0, 0, 0, 0, -20, -40},
    {-30, 0, 10, 15, 15, 10, 0, -30},
    {-30, 5, 15, 20, 20, 15, 5, -30},
    {-30, 0, 15, 20, 20, 15, 0, -30},
    {-30, 5, 10, 15, 15, 10, 5, -30},
    {-40, -20, 0, 5, 5, 0, -20, -40},
    {-50, -40, -30, -30, -30, -30, -40, -50},
}};

int material_eval(const ChessPosition& p, bool use_piece_square) {
    int score = 0;
    for (int sq = 0; sq < kBoardSquares; ++sq) {
        const auto& s = p.at(sq);
        if (!s || s->kind == PieceKind::King) continue;
        int v = kMaterialValues[static_cast<std::size_t>(s->kind)];
        // [file][rank], the same lookup for both colors.
        if (use_piece_square)
            v += kPieceSquareTable[static_cast<std::size_t>(file_of(sq))][static_cast<std::size_t>(rank_of(sq))];
        score += s->color == Color::White ? v : -v;
    }
    return p.side_to_move() == Color::White ? score : -score;
}

}  // namespace hexazero::eunn
