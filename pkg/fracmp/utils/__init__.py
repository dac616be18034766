'''
Utilities used by fracmp internals: configuration, logging, exceptions,
the Gamma function and seeded sample generators.

Configuration
=================

.. automodule:: fracmp.utils.config

Logging
=================

.. automodule:: fracmp.utils.log

Gamma function
=================

.. automodule:: fracmp.utils.special
'''
