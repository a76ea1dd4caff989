"""Atomic read-modify-write primitive for jitted kernels.

CPython threads running inside ``nogil`` jitted code share numpy buffers
with no interpreter-level serialization, so cross-thread counters need a
real hardware atomic. Numba exposes none for the CPU target; this module
lowers one directly to an LLVM ``atomicrmw add`` instruction.
"""

from numba import types
from numba.core import cgutils
from numba.extending import intrinsic


@intrinsic
def atomic_fetch_add(typingctx, array_ty, index_ty, value_ty):
    """``atomic_fetch_add(arr, i, v) -> old``: atomically ``arr[i] += v``.

    ``arr`` must be a writable 1-D array; the returned value is the element
    value observed before the addition (fetch-and-add semantics, relaxed
    memory ordering).
    """
    if not (isinstance(array_ty, types.Array) and array_ty.ndim == 1 and array_ty.mutable):
        return None
    sig = array_ty.dtype(array_ty, types.intp, array_ty.dtype)

    def codegen(context, builder, signature, args):
        arr, idx, val = args
        aryty = signature.args[0]
        ary = cgutils.create_struct_proxy(aryty)(context, builder, value=arr)
        ptr = cgutils.get_item_pointer(context, builder, aryty, ary, (idx,), wraparound=False)
        return builder.atomic_rmw("add", ptr, val, "monotonic")

    return sig, codegen
