import enum
import time
from concurrent.futures import ThreadPoolExecutor
from decimal import Decimal
from typing import Any, Type, List, Callable, TypeVar, Sequence

from dataclass_csv import DataclassWriter

from aggcorrect.logger import logger

T = TypeVar("T")
R = TypeVar("R")


class CustomException(Exception):
    pass


class InputException(CustomException):
    pass


class EstimationException(CustomException):
    pass


class ConfigurationException(CustomException):
    pass


class EnumNotFoundException(ConfigurationException):
    pass


def get_enum_from_value(value: Any, enum_type: Type[enum.Enum]) -> Any:
    for enum_value in enum_type:
        if enum_value.value == value:
            return enum_value

    raise EnumNotFoundException(f"{value!r} is not one of {[member.value for member in enum_type]}")


def get_formatted_string_from_decimal(number: Decimal, decimal_places: int = 2) -> str:
    return f'{number.quantize(Decimal(10) ** -decimal_places):,}'


def run_in_parallel(func: Callable[[T], R], arguments: Sequence[T], workers: int) -> List[R]:
    if workers <= 1 or len(arguments) <= 1:
        return [func(argument) for argument in arguments]

    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(func, arguments))


def create_csv(data_class_list: List[Any], location: str) -> None:
    if len(data_class_list) == 0:
        raise InputException("Nothing to write to " + location)

    for data in data_class_list:
        if not isinstance(data, type(data_class_list[0])):
            raise InputException("Different objects types in data class list")

    with open(location, "w", newline="") as f:
        w = DataclassWriter(f, data_class_list, type(data_class_list[0]))
        w.write()


def timed(func: Callable) -> Callable:
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        start_time: Decimal = Decimal(time.time_ns())
        return_data: Any = func(*args, **kwargs)
        end_time: Decimal = Decimal(time.time_ns())
        logger.debug(
            f"Function: {func.__name__} | Time taken: {get_formatted_string_from_decimal(Decimal(end_time - start_time) / Decimal('1000000'))}ms")
        return return_data

    wrapper.__name__ = func.__name__
    wrapper.__doc__ = func.__doc__
    return wrapper
