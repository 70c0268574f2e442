import configparser
import json
import logging
import os

logger = logging.getLogger(__name__)


def _clean_value(value):
    if isinstance(value, str) and value.startswith('"') and value.endswith('"'):
        return value[1:-1]
    return value


def _clean_values(values: dict):
    for k, v in values.items():
        values[k] = _clean_value(v)
    return values


_TRUE = {"1", "true", "yes", "on"}


class _IniSectionProxy(dict):
    """
    One INI section, exposed both as a dict and through case-insensitive attributes.
    Typed readers (``getint``, ``getbool``) fall back to a default when the key is absent.
    """

    def __call__(self):
        return self._sections_dict[self._section_name]

    def __init__(self, section_name: str, sections_dict: dict):
        super().__init__()
        self._section_name = section_name
        self._sections_dict = sections_dict
        for k, v in self._sections_dict[self._section_name].items():
            super().__setitem__(k, _clean_value(v))

    def _real_key(self, key: str):
        key_map = {k.upper(): k for k in self.keys()}
        return key_map.get(key.upper())

    def __getattr__(self, key: str):
        real = self._real_key(key)
        if real is not None:
            return self[real]
        raise AttributeError(
            f"{key!r} not found in section {self._section_name!r}, "
            f"available variables: {list(self.keys())}"
        )

    def __setattr__(self, key: str, value):
        if key in {"_section_name", "_sections_dict"}:
            return super().__setattr__(key, value)
        self[self._real_key(key) or key] = value

    def get_value(self, key: str, default=None):
        real = self._real_key(key)
        return default if real is None else self[real]

    def getint(self, key: str, default: int) -> int:
        value = self.get_value(key)
        if value is None or str(value).strip() == "":
            return default
        try:
            return int(value)
        except ValueError:
            logger.warning("[%s] %s=%r is not an integer, using %d",
                           self._section_name, key, value, default)
            return default

    def getbool(self, key: str, default: bool) -> bool:
        value = self.get_value(key)
        if value is None:
            return default
        return str(value).strip().lower() in _TRUE


class _FileProxy(dict):
    """
    Eagerly loaded settings file (ini or json).
      - INI: each section is an _IniSectionProxy, reachable as ``file.SECTION``.
      - JSON: top-level keys are copied into the dict, reachable as ``file.key``.
    Top-level writes are refused for INI files; go through a section.
    """

    def __call__(self):
        return self._raw

    def __init__(self, file_path: str, file_type: str):
        super().__init__()
        self._file_path = file_path
        self._file_type = file_type.lower()
        self._raw = None
        self._load_eager()

    def _load_eager(self) -> None:
        if self._file_type == "ini":
            config = configparser.ConfigParser(interpolation=None)
            config.optionxform = str
            if not config.read(self._file_path, encoding="utf-8"):
                raise FileNotFoundError(f"INI not found: {self._file_path}")
            sections = {s: dict(_clean_values(dict(config[s]))) for s in config.sections()}
            self._raw = sections
            for s in sections:
                super().__setitem__(s, _IniSectionProxy(s, sections))

        elif self._file_type == "json":
            with open(self._file_path, encoding="utf-8") as f:
                data = json.load(f)
            if not isinstance(data, dict):
                raise TypeError("Top-level JSON must be an object")
            self._raw = data
            super().update(data)

        else:
            raise ValueError(f"Unsupported file type: {self._file_type}")

    def __getattr__(self, key: str):
        logger.debug("Accessing key '%s' in file '%s'", key, os.path.basename(self._file_path))
        key_map = {k.upper(): k for k in self.keys()}
        real = key_map.get(key.upper())
        if real is None:
            what = "Section" if self._file_type == "ini" else "Key"
            raise AttributeError(f"{what} '{key}' not found in '{os.path.basename(self._file_path)}'.")
        return _clean_value(super().__getitem__(real))

    def __setattr__(self, key: str, value):
        if key in {"_file_path", "_file_type", "_raw"}:
            return super().__setattr__(key, value)
        if self._file_type == "ini":
            raise AttributeError("For INI, assign through a section (file.SECTION.key = value).")
        self[key] = value

    def __setitem__(self, key, value):
        if self._file_type == "ini":
            raise TypeError("Cannot set INI at file level; use file.SECTION[...]")
        super().__setitem__(key, value)
        self._raw[key] = value


_EXTENSIONS = {".ini": "ini", ".json": "json"}


class VaultMeta(type):
    """
    Metaclass exposing the settings file(s) at ``cls.path`` through attributes:
    a file path gives its sections/keys, a directory gives one proxy per file
    (dashes mapped to underscores, case-insensitive).
    """

    def __call__(cls):
        return _FileProxy(cls.path, os.path.splitext(cls.path)[1][1:]).__call__()

    def __getattr__(cls, name):
        if name.startswith("__"):
            raise AttributeError(name)
        if os.path.isfile(cls.path):
            return _FileProxy(cls.path, os.path.splitext(cls.path)[1][1:]).__getattr__(name)
        if os.path.isdir(cls.path):
            files = os.listdir(cls.path)
            file_map = {os.path.splitext(f)[0].replace("-", "_").lower(): f for f in files}
            file_name = file_map.get(name.lower())
            if not file_name:
                raise FileNotFoundError(f"File '{name}' not found in {cls.path}.")
            ext = os.path.splitext(file_name)[1].lower()
            if ext not in _EXTENSIONS:
                raise AttributeError(f"Unsupported file type: {ext}")
            return _FileProxy(os.path.join(cls.path, file_name), _EXTENSIONS[ext])
        raise FileNotFoundError(f"File '{name}' not found in {cls.path}.")
