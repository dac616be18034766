import sys

from fracmp.apps import Application


def main(argv=None):
    return Application(argv=argv)()


if __name__ == '__main__':  # pragma    nocover
    sys.exit(main())
