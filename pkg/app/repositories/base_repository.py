from typing import Any, Callable, Dict, Generic, Hashable, Iterable, List, Optional, TypeVar

RowType = TypeVar("RowType")


class BaseRepository(Generic[RowType]):
    """Read-only in-memory table; rows are built once and never mutated."""

    def __init__(self, rows: Iterable[RowType], key: Callable[[RowType], Hashable]):
        self._rows: List[RowType] = list(rows)
        self._index: Dict[Hashable, RowType] = {}
        for row in self._rows:
            row_key = key(row)
            if row_key in self._index:
                raise ValueError(f"Duplicate row key {row_key!r}")
            self._index[row_key] = row

    def get(self, key: Hashable) -> Optional[RowType]:
        """Get a row by key"""
        return self._index.get(key)

    def get_multi(self, skip: int = 0, limit: Optional[int] = None, **filters: Any) -> List[RowType]:
        """Get rows in table order, filtered on attribute equality"""
        rows = [
            row for row in self._rows
            if all(value is None or getattr(row, field) == value for field, value in filters.items())
        ]
        end = None if limit is None else skip + limit
        return rows[skip:end]

    def count(self, **filters: Any) -> int:
        """Count rows with optional filters"""
        return len(self.get_multi(**filters))
