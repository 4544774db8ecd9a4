'''title'''
__title__ = 'adage'
'''description'''
__description__ = 'Adage: community-aware active defense against graph model extraction, with the attacks to test it'
'''url'''
__url__ = ''
'''version'''
__version__ = '0.3.1'
'''author'''
__author__ = 'adage developers'
'''email'''
__email__ = ''
'''license'''
__license__ = 'Apache License 2.0'
'''copyright'''
__copyright__ = 'Copyright 2024-2030 adage developers'
