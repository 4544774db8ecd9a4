'''
Function:
    Implementation of BaseModuleBuilder, the type-keyed registry behind BuildDefense, BuildCommunityDetector and BuildQuerySelector
Author:
    adage developers
'''


'''BaseModuleBuilder'''
class BaseModuleBuilder():
    REGISTERED_MODULES = {}
    def __init_subclass__(cls, **kwargs):
        super().__init_subclass__(**kwargs)
        for name, module in cls.REGISTERED_MODULES.items():
            assert callable(module), f'{cls.__name__}: "{name}" is not callable'
    '''build'''
    def build(self, module_cfg: dict):
        module_cfg = dict(module_cfg)
        module_type = module_cfg.pop('type', None)
        return self.resolve(module_type)(**module_cfg)
    '''resolve'''
    @classmethod
    def resolve(cls, module_type):
        if module_type not in cls.REGISTERED_MODULES:
            raise KeyError(f'{cls.__name__} has no module named "{module_type}", choose from {list(cls.names())}')
        return cls.REGISTERED_MODULES[module_type]
    '''names'''
    @classmethod
    def names(cls):
        return tuple(cls.REGISTERED_MODULES.keys())
