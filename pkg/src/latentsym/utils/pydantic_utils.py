from typing import Any, Dict, TypeVar

import numpy as np
from addict import Dict as AddictDict
from pydantic import BaseModel, ConfigDict

T = TypeVar("T", bound=BaseModel)


class ArrayModel(BaseModel):
    """
    Immutable model that may hold numpy arrays.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)


def as_complex_array(value: Any, ndim: int) -> np.ndarray:
    """
    Coerce a value to a finite complex128 array of the given dimension.
    """
    arr = np.array(value, dtype=np.complex128)
    if arr.ndim != ndim:
        raise ValueError(f"Expected a {ndim}-dimensional array, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("Array entries must be finite")
    arr.setflags(write=False)
    return arr


def update_pydantic_model_with_dict(
    model_instance: T, update_data: Dict[str, Any]
) -> T:
    """
    Return an updated BaseModel instance based on the update_data.
    """
    raw_data = AddictDict(model_instance.model_dump())
    raw_data.update(AddictDict(update_data))
    new_data = raw_data.to_dict()
    model_class = type(model_instance)
    return model_class.model_validate(new_data)
