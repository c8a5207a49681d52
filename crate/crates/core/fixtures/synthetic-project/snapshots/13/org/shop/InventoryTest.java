package org.shop;

import static org.junit.Assert.*;

public class InventoryTest {
    private final CatalogFixture fixture = new CatalogFixture(74);
    // catalog step 0: load load verify verify load assert verify stub
    // catalog step 1: load setup load reset mock stub mock verify
    // catalog step 2: mock stub setup verify verify mock reset stub
    // catalog step 3: mock reset assert assert stub reset setup setup
    // catalog step 4: assert assert reset verify reset setup load setup
    // catalog step 5: stub stub reset reset load load assert setup
    // catalog step 6: reset mock reset setup stub setup assert verify
    // catalog step 7: verify load setup reset load load setup reset

    @Test
    public void case0() {
        assertEquals(603, fixture.find30());
        assertEquals(404, fixture.count19());
        assertEquals(241, fixture.sum20());
        assertEquals(341, fixture.count9());
        assertEquals(720, fixture.sum36());
        assertEquals(533, fixture.sum20());
    }

    @Test
    public void case1() {
        assertEquals(609, fixture.put9());
        assertEquals(458, fixture.count15());
        assertEquals(259, fixture.count27());
        assertEquals(266, fixture.find17());
    }
}
