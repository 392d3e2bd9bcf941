import re

ISBN = re.compile(r"^(97[89])?\d{9}[\dX]$")


def valid_isbn(value):
    return bool(ISBN.match(value or ""))
