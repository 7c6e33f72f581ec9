"""
因子图类的基础邻接标签方案

所有方案的标签都以顶点自身下标（w = ⌈log2 n⌉ 位）开头，保证同一因子内标签互不相同；
n 是整个编码共用的规模参数（各因子顶点数的最大值），因此不同因子的标签等宽。

    clique: [index]                         解码: 下标不同
    path:   [index]                         解码: |i−j| = 1
    cycle:  [index][length]                 解码: |i−j| ∈ {1, L−1}
    knr:    [index][slot_1]…[slot_k]        解码: 任一方向的后继邻居表包含对方
    row:    [index][row bit 0 … n−1]        解码: 邻接行中对方的位为1
"""
from dataclasses import dataclass
from typing import List, Optional, Sequence

from graphs.graph import Graph, degeneracy_order
from labeling.label import Label
from models.descriptor import BASE_SCHEME_IDS
from utils.errors import ClassMembershipError, LabelFormatError
from utils.helpers import index_bits


def scheme_size(scheme_id: str, n: int, k: int = 0) -> int:
    """方案的标签位数 s(n)"""
    w = index_bits(n)
    if scheme_id in ("clique", "path"):
        return w
    if scheme_id == "cycle":
        return w + n.bit_length()
    if scheme_id == "knr":
        return (k + 1) * w
    if scheme_id == "row":
        return w + n
    raise ValueError(f"未知基础方案: {scheme_id}")


@dataclass(frozen=True)
class BaseScheme:
    """
    一个具体参数化的基础方案

    Attributes:
        scheme_id: 方案编号
        n: 规模参数（各因子顶点数上限）
        k: knr 方案的后继邻居上限，其他方案为0
    """
    scheme_id: str
    n: int
    k: int = 0

    def __post_init__(self):
        if self.scheme_id not in BASE_SCHEME_IDS:
            raise ValueError(f"未知基础方案: {self.scheme_id}")
        if self.n < 1:
            raise ValueError(f"规模参数必须为正: {self.n}")
        if self.k < 0 or (self.k and self.scheme_id != "knr"):
            raise ValueError(f"方案 {self.scheme_id} 不接受 k={self.k}")

    @property
    def w(self) -> int:
        """下标字段位数"""
        return index_bits(self.n)

    @property
    def s(self) -> int:
        return scheme_size(self.scheme_id, self.n, self.k)

    def index_of(self, label: Label) -> int:
        return label.field(0, self.w)

    def encode(self, g: Graph) -> List[Label]:
        return encode_base(self, g)

    def decode(self, a: Label, b: Label) -> bool:
        return decode_base(self, a, b)


def make_scheme(scheme_id: str, n: int, k: int = 0) -> BaseScheme:
    return BaseScheme(scheme_id=scheme_id, n=n, k=k if scheme_id == "knr" else 0)


def scheme_from_width(scheme_id: str, n: int, s: int) -> BaseScheme:
    """
    由方案编号、规模参数和标签位宽还原方案（knr 的 k 由位宽推出）

    Args:
        scheme_id: 方案编号
        n: 规模参数
        s: 标签位宽

    Returns:
        方案
    """
    k = 0
    if scheme_id == "knr":
        w = index_bits(n)
        if s % w:
            raise LabelFormatError(f"knr 标签位宽 {s} 不是下标位数 {w} 的倍数")
        k = s // w - 1
    scheme = make_scheme(scheme_id, n, k)
    if scheme.s != s:
        raise LabelFormatError(f"方案 {scheme_id}(n={n}) 的位宽应为 {scheme.s}，描述符给出 {s}")
    return scheme


def _is_complete(g: Graph) -> bool:
    return g.m == g.n * (g.n - 1) // 2


def _is_path(g: Graph) -> bool:
    return g.m == max(0, g.n - 1) and all(g.has_edge(i, i + 1) for i in range(g.n - 1))


def _is_cycle(g: Graph) -> bool:
    return g.n >= 3 and g.m == g.n and g.has_edge(0, g.n - 1) and all(
        g.has_edge(i, i + 1) for i in range(g.n - 1)
    )


def check_membership(scheme: BaseScheme, g: Graph, name: str = "图") -> None:
    """不属于方案支持的图类时抛出 ClassMembershipError"""
    if g.n > scheme.n:
        raise ClassMembershipError(f"{name} 有 {g.n} 个顶点，超过方案规模参数 {scheme.n}")
    sid = scheme.scheme_id
    if sid == "clique" and not _is_complete(g):
        raise ClassMembershipError(f"{name} 不是完全图")
    if sid == "path" and not _is_path(g):
        raise ClassMembershipError(f"{name} 不是按顶点顺序编号的路径")
    if sid == "cycle" and not _is_cycle(g):
        raise ClassMembershipError(f"{name} 不是按顶点顺序编号的环")
    if sid == "knr":
        k = degeneracy_order(g).k
        if k > scheme.k:
            raise ClassMembershipError(f"{name} 的退化度 {k} 超过方案参数 k={scheme.k}")


def encode_base(scheme: BaseScheme, g: Graph) -> List[Label]:
    """
    用基础方案为图的每个顶点编码

    Args:
        scheme: 方案
        g: 属于方案图类的图

    Returns:
        每个顶点一个恰为 s 位的标签
    """
    check_membership(scheme, g)
    w, s = scheme.w, scheme.s
    sid = scheme.scheme_id
    labels = []

    if sid in ("clique", "path"):
        return [Label(v, s) for v in range(g.n)]

    if sid == "cycle":
        tail = s - w
        return [Label((v << tail) | g.n, s) for v in range(g.n)]

    if sid == "knr":
        order = degeneracy_order(g)
        for v in range(g.n):
            later = sorted(order.later_neighbors(g, v))
            slots = later + [v] * (scheme.k - len(later))
            value = v
            for u in slots:
                value = (value << w) | u
            labels.append(Label(value, s))
        return labels

    # row
    for v in range(g.n):
        row = 0
        for u in g.neighbors(v):
            row |= 1 << (scheme.n - 1 - u)
        labels.append(Label((v << scheme.n) | row, s))
    return labels


def decode_base(scheme: BaseScheme, a: Label, b: Label) -> bool:
    """
    基础方案解码（对称、无状态）

    Args:
        scheme: 方案
        a: 标签
        b: 标签

    Returns:
        是否相邻
    """
    s, w = scheme.s, scheme.w
    if len(a) != s or len(b) != s:
        raise LabelFormatError(f"基础标签长度应为 {s}，实际 {len(a)} 与 {len(b)}")
    i = a.field(0, w)
    j = b.field(0, w)
    if i == j:
        return False

    sid = scheme.scheme_id
    if sid == "clique":
        return True
    if sid == "path":
        return abs(i - j) == 1
    if sid == "cycle":
        length = a.field(w, s - w)
        if length != b.field(w, s - w):
            return False
        return abs(i - j) in (1, length - 1)
    if sid == "knr":
        return _in_slots(a, j, scheme) or _in_slots(b, i, scheme)
    # row
    return bool(a.field(w + j, 1) or b.field(w + i, 1)) if max(i, j) < scheme.n else False


def _in_slots(label: Label, target: int, scheme: BaseScheme) -> bool:
    w = scheme.w
    return any(label.field(w * (t + 1), w) == target for t in range(scheme.k))


def scheme_for_factors(factors: Sequence[Graph], base: Optional[str] = None) -> BaseScheme:
    """
    为一组因子选择共用的方案

    base 为 None 时自动选择：全部为完全图用 clique，全部为路径用 path，
    全部为环用 cycle，否则用 knr。规模参数取最大因子顶点数，knr 的 k 取
    因子退化度的最大值。

    Args:
        factors: 因子图
        base: 指定方案编号

    Returns:
        方案（尚未校验因子的类归属）
    """
    n = max(f.n for f in factors)
    if base is None:
        if all(_is_complete(f) for f in factors):
            base = "clique"
        elif all(_is_path(f) for f in factors):
            base = "path"
        elif all(_is_cycle(f) for f in factors):
            base = "cycle"
        else:
            base = "knr"
    k = max(degeneracy_order(f).k for f in factors) if base == "knr" else 0
    return make_scheme(base, n, k)
