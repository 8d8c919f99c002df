class PyQiEmiException(Exception):
    pass
