from typing import Optional, Sequence

from tad_lab.models import SEP_ID, MaskedState

from .exceptions import InputTooLong

__all__ = ["teacher_input", "student_input"]


def _check_length(state: MaskedState, max_len: Optional[int]):
    if max_len is not None and state.total_length > max_len:
        raise InputTooLong(state.total_length, max_len)


def teacher_input(
    q: Sequence[int], a: Sequence[int], state: MaskedState, max_len: Optional[int] = None
) -> MaskedState:
    """``q + SEP + a + x_s``: the response region keeps its own indices, only
    its absolute offset moves."""
    res = state.with_prompt(tuple(q) + (SEP_ID,) + tuple(a))
    _check_length(res, max_len)
    return res


def student_input(q: Sequence[int], state: MaskedState, max_len: Optional[int] = None) -> MaskedState:
    res = state.with_prompt(tuple(q))
    _check_length(res, max_len)
    return res
